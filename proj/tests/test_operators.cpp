#include <doctest.h>

#include <sstream>
#include <string>

#include "arbor/operators.hpp"
#include "arbor/random.hpp"
#include "oracles.hpp"

using namespace arbor;

namespace {

std::vector<TreeSpec> grid_trees() {
    return {TreeSpec::homogeneous(1), TreeSpec::homogeneous(2), TreeSpec::homogeneous(3),
            TreeSpec::per_level({3}, 2), TreeSpec::explicit_table({std::nullopt, 0, 0, 1, 1, 2}, 2)};
}

}  // namespace

TEST_CASE("nabla and Delta on indicators") {
    const auto t = build_truncation(TreeSpec::homogeneous(2), 3);
    CHECK(oracle::max_diff(apply_nabla(TreeFunction::indicator(t, 0)), TreeFunction::indicator(t, 0)) == 0.0);
    for (VertexId w = 1; w < t->size(); ++w) {
        const auto expected = TreeFunction::indicator(t, w) - TreeFunction::indicator(t, *t->parent(w));
        CHECK(oracle::max_diff(apply_nabla(TreeFunction::indicator(t, w)), expected) == 0.0);

        TreeFunction up(t);
        up[w] = 1.0;
        for (VertexId u : t->ancestors(w)) up[u] = 1.0;
        CHECK(oracle::max_diff(apply_delta(TreeFunction::indicator(t, w)), up) == 0.0);
    }
}

TEST_CASE("nabla of a constant on the binary tree") {
    const auto t = build_truncation(TreeSpec::homogeneous(2), 3);
    const auto g = apply_nabla(TreeFunction::constant(t, 1.0));
    for (VertexId v = 0; v < t->size(); ++v) CHECK(g[v] == (t->depth(v) < 3 ? -1.0 : 1.0));
}

TEST_CASE("Delta of the indicator of depth <= 1 on the binary tree") {
    const auto t = build_truncation(TreeSpec::homogeneous(2), 3);
    TreeFunction f(t);
    f[0] = f[1] = f[2] = 1.0;
    const auto d = apply_delta(f);
    CHECK(d[0] == 3.0);
    CHECK(d[1] == 1.0);
    CHECK(d[2] == 1.0);
    for (VertexId v = 3; v < t->size(); ++v) CHECK(d[v] == 0.0);
}

TEST_CASE("kernels agree with the scanning oracles") {
    Rng rng(21);
    for (const auto& spec : grid_trees()) {
        for (std::size_t d = 0; d <= 4; ++d) {
            const auto t = build_truncation(spec, d);
            const auto f = random_dyadic_function(t, rng, true);
            const auto phi = random_dyadic_function(t, rng, true);
            CHECK(oracle::max_diff(apply_nabla(f), oracle::nabla(f)) == 0.0);
            CHECK(oracle::max_diff(apply_delta(f), oracle::delta(f)) == 0.0);
            CHECK(oracle::max_diff(apply_toeplitz(phi, f), oracle::toeplitz(phi, f)) == 0.0);
        }
    }
}

TEST_CASE("inversion identities and two evaluation paths") {
    Rng rng(1);
    for (const auto& spec : grid_trees()) {
        for (std::size_t d = 0; d <= 5; ++d) {
            const auto t = build_truncation(spec, d);
            for (int k = 0; k < 25; ++k) {
                const auto f = random_function(t, rng);
                const auto phi = random_function(t, rng);
                CHECK(oracle::max_diff(apply_delta(apply_nabla(f)), f) < 1e-12);
                CHECK(oracle::max_diff(apply_nabla(apply_delta(f)), f) < 1e-12);
                CHECK(oracle::max_diff(apply_toeplitz(phi, f), apply_toeplitz_alt(phi, f)) < 1e-12);
            }
            // Dyadic inputs make both identities exact.
            const auto f = random_dyadic_function(t, rng, true);
            const auto phi = random_dyadic_function(t, rng, true);
            CHECK(oracle::max_diff(apply_delta(apply_nabla(f)), f) == 0.0);
            CHECK(oracle::max_diff(apply_toeplitz(phi, f), apply_toeplitz_alt(phi, f)) == 0.0);
        }
    }
}

TEST_CASE("Toeplitz examples") {
    const auto t = build_truncation(TreeSpec::homogeneous(2), 3);
    const auto root = TreeFunction::indicator(t, 0);
    Rng rng(4);
    for (int k = 0; k < 10; ++k) {
        const auto f = random_function(t, rng);
        const auto tf = apply_toeplitz(root, f);
        const Complex nabla_at_root = f[0] - f[1] - f[2];
        CHECK(std::abs(tf[0] - nabla_at_root) < 1e-15);
        for (VertexId v = 1; v < t->size(); ++v) CHECK(tf[v] == 0.0);
        CHECK(apply_toeplitz(TreeFunction(t), f).is_zero());
    }
    CHECK(oracle::max_diff(apply_toeplitz_alt(root, root), root) == 0.0);
}

TEST_CASE("columns in closed form") {
    Rng rng(8);
    for (const auto& spec : grid_trees()) {
        const auto t = build_truncation(spec, 3);
        const auto phi = random_function(t, rng);
        const auto dphi = derivative(phi);
        for (VertexId w = 0; w < t->size(); ++w) {
            const auto col = toeplitz_column(phi, w);
            CHECK(oracle::max_diff(col, apply_toeplitz(phi, TreeFunction::indicator(t, w))) < 1e-14);
            CHECK(col[w] == phi[w]);
            for (VertexId u = 0; u < t->size(); ++u) {
                if (u != w) CHECK(col[u] == (t->is_ancestor(u, w) ? dphi[w] : Complex{}));
            }
        }
    }
    const auto t = build_truncation(TreeSpec::homogeneous(2), 2);
    const auto radial = TreeFunction(t, {1.0, 1.0, 1.0, 0.5, 0.5, 0.5, 0.5});
    CHECK(toeplitz_column(radial, 1).is_zero() == false);
    CHECK(toeplitz_column(radial, 1)[0] == 0.0);
    CHECK_THROWS_AS(toeplitz_column(radial, 7), std::out_of_range);
}

TEST_CASE("materialized matrices") {
    const auto t = build_truncation(TreeSpec::homogeneous(2), 2);
    const auto m = materialize(TreeFunction::indicator(t, 0));
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(7, 7);
    expected(0, 0) = 1.0;
    expected(0, 1) = expected(0, 2) = -1.0;
    CHECK(m.entries == expected);
    CHECK(materialize(TreeFunction(t)).entries.isZero(0.0));

    Rng rng(13);
    for (const auto& spec : grid_trees()) {
        for (std::size_t d = 0; d <= 4; ++d) {
            const auto tt = build_truncation(spec, d);
            const auto phi = random_dyadic_function(tt, rng, true);
            const auto mm = materialize(phi);
            CHECK(mm.entries == oracle::dense(phi));
            CHECK(mm.entries == reference::materialize(phi).entries);
            // Triangular with diagonal phi: the eigenvalues are the values of phi.
            CHECK(mm.entries.isUpperTriangular(0.0));
            for (VertexId w = 0; w < tt->size(); ++w) {
                CHECK(mm.entries(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(w)) == phi[w]);
            }
        }
    }
}

TEST_CASE("T is linear in the symbol") {
    Rng rng(17);
    const auto t = build_truncation(TreeSpec::per_level({3}, 2), 3);
    const auto phi = random_dyadic_function(t, rng, true);
    const auto psi = random_dyadic_function(t, rng, true);
    const Complex a{0.5, 1.0}, b{-2.0, 0.25};
    const auto lhs = materialize(a * phi + b * psi).entries;
    const Eigen::MatrixXcd rhs = a * materialize(phi).entries + b * materialize(psi).entries;
    CHECK(lhs == rhs);
}

TEST_CASE("adjoint of the truncated matrix") {
    Rng rng(23);
    const auto t = build_truncation(TreeSpec::homogeneous(3), 3);
    const auto phi = random_function(t, rng);
    const auto y = random_function(t, rng);
    const Eigen::VectorXcd expected = oracle::dense(phi).adjoint() * oracle::vec(y);
    CHECK((oracle::vec(apply_toeplitz_adjoint(phi, y)) - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("parallel kernels match the serial reference") {
    Rng rng(29);
    const auto t = build_truncation(TreeSpec::homogeneous(3), 7);
    const auto f = random_function(t, rng);
    const auto phi = random_function(t, rng);
    CHECK(oracle::max_diff(apply_nabla(f), reference::apply_nabla(f)) < 1e-13);
    CHECK(oracle::max_diff(apply_delta(f), reference::apply_delta(f)) < 1e-11);
    CHECK(oracle::max_diff(shift_to_parent(f), reference::shift_to_parent(f)) == 0.0);
    CHECK(oracle::max_diff(derivative(f), reference::derivative(f)) == 0.0);
    CHECK(oracle::max_diff(apply_toeplitz(phi, f), reference::apply_toeplitz(phi, f)) < 1e-11);
}

TEST_CASE("matrix export") {
    const auto t = build_truncation(TreeSpec::homogeneous(2), 1);
    const auto m = materialize(TreeFunction(t, {Complex{1, 2}, 0.0, 0.5}));
    std::ostringstream mm;
    write_matrix_market(mm, m);
    CHECK(mm.str() ==
          "%%MatrixMarket matrix coordinate complex general\n"
          "3 3 4\n"
          "1 1 1 2\n"
          "1 2 -1 -2\n"
          "1 3 -0.5 -2\n"
          "3 3 0.5 0\n");
    std::ostringstream csv;
    write_dense_csv(csv, m);
    std::istringstream lines(csv.str());
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "re_0,im_0,re_1,im_1,re_2,im_2");
    CHECK(row == "1,2,-1,-2,-0.5,-2");
}

TEST_CASE("mismatched truncations are rejected") {
    const auto a = build_truncation(TreeSpec::homogeneous(2), 2);
    const auto b = build_truncation(TreeSpec::homogeneous(2), 3);
    CHECK_THROWS_AS(apply_toeplitz(TreeFunction(a), TreeFunction(b)), std::invalid_argument);
    CHECK_THROWS_AS(apply_toeplitz_alt(TreeFunction(a), TreeFunction(b)), std::invalid_argument);
}
