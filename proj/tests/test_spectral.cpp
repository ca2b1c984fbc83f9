#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "arbor/random.hpp"
#include "arbor/spectral.hpp"
#include "oracles.hpp"

using namespace arbor;

namespace {

const Exponent one = Exponent::finite(1.0);
const Exponent two = Exponent::finite(2.0);
const Exponent inf = Exponent::infinity();

/// sum of |g|^p over the truncation, from the realized witness.
double realized_power_sum(const TreeFunction& g, double p) {
    double s = 0.0;
    for (Complex z : g.values()) s += std::pow(std::abs(z), p);
    return s;
}

SymbolSpec random_finite_symbol(Rng& rng, std::size_t max_depth, std::size_t count, std::size_t b = 2) {
    FiniteSupport fs;
    for (std::size_t k = 0; k < count; ++k) {
        VertexPath path(rng.index(max_depth + 1));
        for (auto& c : path) c = rng.index(b);
        if (std::none_of(fs.entries.begin(), fs.entries.end(), [&](const auto& e) { return e.first == path; })) {
            fs.entries.emplace_back(path, rng.in_disk());
        }
    }
    return SymbolSpec(std::move(fs));
}

}  // namespace

TEST_CASE("nabla kernel on the binary tree") {
    const auto spec = TreeSpec::homogeneous(2);

    const auto w2 = nabla_kernel_witness(spec, two);
    CHECK(w2.exists == Certified::yes);
    CHECK(w2.shape == KernelWitness::Shape::equal_split);
    CHECK(*w2.norm * *w2.norm == doctest::Approx(2.0).epsilon(1e-15));
    const auto g = w2.realize(build_truncation(spec, 7));
    for (VertexId v = 0; v < g.size(); ++v) CHECK(g[v] == std::ldexp(1.0, -static_cast<int>(g.tree().depth(v))));
    CHECK(interior_nabla_defect(g) == 0.0);
    // Partial sums approach the analytic value from below: 2 - 2^-D.
    CHECK(realized_power_sum(g, 2.0) == doctest::Approx(2.0 - std::ldexp(1.0, -7)));

    CHECK(nabla_kernel_witness(spec, one).exists == Certified::no);

    const auto winf = nabla_kernel_witness(spec, inf);
    CHECK(winf.shape == KernelWitness::Shape::branch_indicator);
    const auto b = winf.realize(build_truncation(spec, 5));
    CHECK(interior_nabla_defect(b) == 0.0);
    CHECK(p_norm(b, inf) == 1.0);
    CHECK(*winf.norm == 1.0);

    const auto w3 = nabla_kernel_witness(spec, Exponent::finite(3.0));
    CHECK(std::pow(*w3.norm, 3.0) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("nabla kernel on other trees") {
    CHECK(nabla_kernel_witness(TreeSpec::homogeneous(1), two).exists == Certified::no);
    CHECK(nabla_kernel_witness(TreeSpec::per_level({4}, 1), Exponent::finite(1.5)).exists == Certified::no);
    CHECK(nabla_kernel_witness(TreeSpec::homogeneous(1), inf).exists == Certified::yes);

    // Levels 1, 3, 6, 12, ...: sum 1/L_n = 1 + 2/3.
    const auto spec = TreeSpec::per_level({3}, 2);
    const auto w = nabla_kernel_witness(spec, two);
    CHECK(*w.norm * *w.norm == doctest::Approx(5.0 / 3.0));
    const auto g = w.realize(build_truncation(spec, 12));
    CHECK(interior_nabla_defect(g) < 1e-15);
    CHECK(realized_power_sum(g, 2.0) == doctest::Approx(5.0 / 3.0).epsilon(1e-3));

    // Explicit table: a path of length 2 carrying 1, then an equal split.
    const auto table = TreeSpec::explicit_table({std::nullopt, 0, 0, 1, 1, 2}, 2);
    const auto wt = nabla_kernel_witness(table, two);
    CHECK(wt.shape == KernelWitness::Shape::path_then_split);
    CHECK(*wt.norm * *wt.norm == doctest::Approx(4.0));
    const auto gt = wt.realize(build_truncation(table, 14));
    CHECK(interior_nabla_defect(gt) == 0.0);
    CHECK(realized_power_sum(gt, 2.0) == doctest::Approx(4.0).epsilon(1e-3));
    CHECK_THROWS_AS(nabla_kernel_witness(TreeSpec::homogeneous(1), two).realize(build_truncation(table, 2)),
                    std::logic_error);
}

TEST_CASE("boundedness certificates") {
    const auto spec = TreeSpec::homogeneous(2);
    const auto t = build_truncation(spec, 3);
    const SymbolSpec finite(FiniteSupport{{{{}, 1.0}, {{1, 0}, Complex{0, 1}}}});
    for (const Exponent& p : {one, two, inf, Exponent::finite(3.0)}) {
        CHECK(boundedness_certificate(finite, t, p).verdict == BoundednessVerdict::certified_bounded);
    }
    const SymbolSpec geo(RadialGeometric{1.0, 0.5});
    CHECK(boundedness_certificate(geo, t, two).verdict == BoundednessVerdict::certified_bounded);
    CHECK(boundedness_certificate(geo, t, one).verdict == BoundednessVerdict::certified_bounded);
    // sum 2^n 2^-n diverges, so phi is not in l^1.
    CHECK(boundedness_certificate(geo, t, inf).verdict == BoundednessVerdict::not_certified);
    const SymbolSpec sector(SectorIndicator{{0}, 1.0});
    CHECK(boundedness_certificate(sector, t, two).verdict == BoundednessVerdict::not_certified);
    const auto cert = boundedness_certificate(sector, t, one);
    CHECK(cert.q.is_infinite());
    CHECK(cert.verdict == BoundednessVerdict::certified_bounded);
}

TEST_CASE("point spectrum and the kernel case split") {
    const auto t = build_truncation(TreeSpec::homogeneous(2), 3);
    const SymbolSpec pair(FiniteSupport{{{{}, 1.0}, {{0}, 2.0}}});
    const auto r2 = point_spectrum(pair, t, two);
    CHECK(r2.kernel_case == "b");
    CHECK(r2.zero_included);
    CHECK(r2.attained_values == std::vector<Complex>{0.0, 1.0, 2.0});
    CHECK(r2.memberships.size() == 3);

    const auto phi = realize_symbol(pair, t);
    REQUIRE(r2.truncated_eigenvalues.size() == t->size());
    for (VertexId v = 0; v < t->size(); ++v) CHECK(r2.truncated_eigenvalues[v] == phi[v]);

    const auto r1 = point_spectrum(pair, t, one);
    CHECK(r1.kernel_case == "a");
    CHECK(r1.zero_included);  // phi vanishes somewhere

    const SymbolSpec constant(SectorIndicator{{}, 2.0});
    const auto rc = point_spectrum(constant, t, one);
    CHECK(rc.kernel_case == "a");
    CHECK_FALSE(rc.zero_included);
    CHECK(rc.attained_values == std::vector<Complex>{2.0});

    const auto rg = point_spectrum(SymbolSpec(RadialGeometric{1.0, 0.5}), t, two);
    CHECK_FALSE(rg.attained_is_complete);
    CHECK(rg.attained_values.front() == 1.0);
    CHECK(rg.attained_values[3] == 0.125);
}

TEST_CASE("spectrum report with spot checks") {
    const auto t = build_truncation(TreeSpec::per_level({3}, 2), 3);
    const SymbolSpec s(FiniteSupport{{{{}, 0.5}, {{2, 1}, Complex{0, -0.75}}}});
    const auto r = spectrum(s, t, two, 5);
    CHECK(r.hypotheses_certified);
    CHECK(r.note.empty());
    REQUIRE(r.spot_checks.size() == 4);
    for (const auto& c : r.spot_checks) {
        CHECK(c.passed);
        CHECK(c.delta >= 1.0);
    }
    const auto rs = spectrum(SymbolSpec(SectorIndicator{{0}, 1.0}), t, two);
    CHECK_FALSE(rs.hypotheses_certified);
    CHECK(rs.note == "theorem hypotheses not certified");
}

TEST_CASE("resolvent parameters") {
    const auto spec = TreeSpec::homogeneous(2);
    const auto closure = RangeClosure::of(SymbolSpec(FiniteSupport{{{{}, 1.0}, {{0}, 2.0}}}), spec);
    const auto a = ResolventParams::for_closure(3.0, closure);
    CHECK(a.delta == 1.0);
    CHECK(a.delta0 == 1.0);
    const auto b = ResolventParams::for_closure(Complex{0, 0.5}, closure);
    CHECK(b.delta == 0.5);
    CHECK(b.delta0 == 0.5);
    CHECK_THROWS_AS(ResolventParams::for_closure(0.0, closure), std::invalid_argument);
    CHECK_THROWS_AS(ResolventParams::for_closure(2.0, closure), std::domain_error);

    const auto geo = RangeClosure::of(SymbolSpec(RadialGeometric{1.0, 0.5}), spec);
    CHECK_THROWS_AS(ResolventParams::for_closure(0.25, geo), std::domain_error);
    CHECK(ResolventParams::for_closure(0.375, geo).delta == doctest::Approx(0.125));

    const auto t = build_truncation(spec, 1);
    const TreeFunction phi(t, {1.0, 0.5, 0.5});
    CHECK(ResolventParams::for_function(0.75, phi).delta == 0.25);
    CHECK(ResolventParams::for_function(0.75, phi).delta0 == 0.25);
}

TEST_CASE("resolvent agrees with a dense solve") {
    Rng rng(31);
    for (const auto& spec : {TreeSpec::homogeneous(2), TreeSpec::per_level({3}, 2), TreeSpec::homogeneous(1)}) {
        for (std::size_t d = 0; d <= 4; ++d) {
            const auto t = build_truncation(spec, d);
            const SymbolSpec s = random_finite_symbol(rng, std::min<std::size_t>(d, 2), 4, spec.branching_at_depth(0) == 1 ? 1 : 2);
            const auto phi = realize_symbol(s, t);
            const auto closure = RangeClosure::of(s, spec);
            const auto g = random_function(t, rng);
            for (Complex lambda : {Complex{3, 0}, Complex{-2, 1}, Complex{0, 5}, Complex{1.5, -1.5}}) {
                const auto params = ResolventParams::for_closure(lambda, closure);
                const auto res = resolvent_apply(phi, params, g);
                const Eigen::MatrixXcd shifted =
                    oracle::dense(phi) - lambda * Eigen::MatrixXcd::Identity(t->size(), t->size());
                const Eigen::VectorXcd f = shifted.partialPivLu().solve(oracle::vec(g));
                CHECK((oracle::vec(res.f) - f).cwiseAbs().maxCoeff() < 1e-12);
                CHECK(res.residual < 1e-12);

                // nabla f = nabla g / (phi - lambda), pointwise.
                const auto nf = apply_nabla(res.f);
                const auto ng = apply_nabla(g);
                for (VertexId v = 0; v < t->size(); ++v) {
                    CHECK(std::abs(nf[v] - ng[v] / (phi[v] - lambda)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("resolvent of the geometric symbol near the accumulation point") {
    const auto spec = TreeSpec::homogeneous(2);
    const SymbolSpec s(RadialGeometric{1.0, 0.5});
    const auto closure = RangeClosure::of(s, spec);
    const auto t = build_truncation(spec, 6);
    const auto phi = realize_symbol(s, t);
    Rng rng(2);
    const auto g = random_function(t, rng);
    for (Complex lambda : {Complex{0.375, 0}, Complex{0, 0.1}, Complex{-0.05, 0}}) {
        const auto res = resolvent_apply(phi, ResolventParams::for_closure(lambda, closure), g);
        CHECK(res.residual < 1e-10 * std::max(1.0, p_norm(g, two)));
    }
}

TEST_CASE("operator norms against brute force and SVD") {
    Rng rng(37);
    // Up to 7 vertices: binary D <= 2 and the path.
    for (const auto& [spec, depth] : {std::pair{TreeSpec::homogeneous(2), 2}, std::pair{TreeSpec::homogeneous(1), 6},
                                      std::pair{TreeSpec::per_level({3}, 1), 1}}) {
        const auto t = build_truncation(spec, static_cast<std::size_t>(depth));
        for (int k = 0; k < 20; ++k) {
            const auto phi = random_dyadic_function(t, rng, k % 2 == 1);
            const auto m = materialize(phi);
            CHECK(operator_norm_estimate(m, one) == oracle::brute_one_norm(m.entries));
            CHECK(operator_norm_estimate(phi, one) == doctest::Approx(operator_norm_estimate(m, one)).epsilon(1e-14));
            CHECK(operator_norm_estimate(phi, inf) == doctest::Approx(operator_norm_estimate(m, inf)).epsilon(1e-14));
            if (k % 2 == 0) {
                CHECK(operator_norm_estimate(m, inf) == oracle::brute_inf_norm(m.entries.real()));
            }
            double max_phi = 0.0;
            for (Complex z : phi.values()) max_phi = std::max(max_phi, std::abs(z));
            for (const Exponent& p : {one, two, inf}) CHECK(operator_norm_estimate(phi, p) >= max_phi - 1e-8);
        }
    }

    for (std::size_t d : {3, 5, 7}) {
        const auto t = build_truncation(TreeSpec::homogeneous(2), d);
        const auto phi = random_function(t, rng);
        const auto m = materialize(phi);
        const double exact = oracle::spectral_norm(m.entries);
        const auto dense = spectral_norm_estimate(m.entries);
        CHECK(dense.converged);
        CHECK(std::abs(dense.value - exact) <= 1e-6 * exact);
        CHECK(std::abs(spectral_norm_estimate(phi).value - exact) <= 1e-6 * exact);
    }
}

TEST_CASE("norm edge cases") {
    const auto t = build_truncation(TreeSpec::homogeneous(2), 3);
    CHECK(operator_norm_estimate(TreeFunction(t), two) == 0.0);
    CHECK(operator_norm_estimate(materialize(TreeFunction(t)), two) == 0.0);
    TreeFunction phi(t);
    phi[0] = 1.0;
    CHECK(oracle::spectral_norm(materialize(phi).entries) == doctest::Approx(std::sqrt(3.0)));
    CHECK(operator_norm_estimate(phi, two) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-8));

    // On the path nabla 1 vanishes above the leaf, so T 1 = 0 whenever phi is
    // zero at the leaf: the all-ones start vector lies in the kernel.
    const auto path = build_truncation(TreeSpec::homogeneous(1), 2);
    const TreeFunction top(path, {1.0, 0.5, 0.0});
    CHECK(apply_toeplitz(top, TreeFunction::constant(path, 1.0)).is_zero());
    const double exact = oracle::spectral_norm(materialize(top).entries);
    CHECK(spectral_norm_estimate(top).value == doctest::Approx(exact).epsilon(1e-6));
    CHECK(spectral_norm_estimate(materialize(top).entries).value == doctest::Approx(exact).epsilon(1e-6));
    CHECK_FALSE(norm_supported(Exponent::finite(3.0)));
    CHECK_THROWS_AS(operator_norm_estimate(phi, Exponent::finite(3.0)), std::invalid_argument);
}
