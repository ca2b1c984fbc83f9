#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "arbor/symbol.hpp"

using namespace arbor;

namespace {

const Exponent two = Exponent::finite(2.0);
const Exponent one = Exponent::finite(1.0);
const Exponent inf = Exponent::infinity();

SymbolSpec pair_symbol() { return SymbolSpec(FiniteSupport{{{{}, 1.0}, {{0}, 2.0}}}); }

}  // namespace

TEST_CASE("realizing each family") {
    const auto t = build_truncation(TreeSpec::homogeneous(2), 2);

    const auto fs = realize_symbol(pair_symbol(), t);
    CHECK(fs[0] == 1.0);
    CHECK(fs[1] == 2.0);
    CHECK(fs[2] == 0.0);

    const auto geo = realize_symbol(SymbolSpec(RadialGeometric{2.0, 0.5}), t);
    for (VertexId v = 0; v < t->size(); ++v) CHECK(geo[v] == std::ldexp(2.0, -static_cast<int>(t->depth(v))));

    const auto sec = realize_symbol(SymbolSpec(SectorIndicator{{1}, Complex{0, 3}}), t);
    for (VertexId v = 0; v < t->size(); ++v) {
        const bool inside = v == 2 || t->is_ancestor(2, v);
        CHECK(sec[v] == (inside ? Complex{0, 3} : Complex{}));
    }

    const auto table = realize_symbol(SymbolSpec(RadialTable{{1.0, 0.5}}), t);
    CHECK(table[0] == 1.0);
    CHECK(table[1] == 0.5);
    CHECK(table[3] == 0.0);
}

TEST_CASE("symbol validation and support") {
    CHECK_THROWS_AS(SymbolSpec(RadialGeometric{1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(SymbolSpec(RadialGeometric{1.0, Complex{0, -1.5}}), std::invalid_argument);
    CHECK_THROWS_AS(SymbolSpec(FiniteSupport{{{{0}, 1.0}, {{0}, 2.0}}}), std::invalid_argument);

    const auto t = build_truncation(TreeSpec::homogeneous(2), 1);
    CHECK_THROWS_AS(realize_symbol(SymbolSpec(FiniteSupport{{{{0, 0}, 1.0}}}), t), std::out_of_range);
    CHECK_THROWS_AS(realize_symbol(SymbolSpec(FiniteSupport{{{{2}, 1.0}}}), t), std::out_of_range);

    CHECK(pair_symbol().support_depth() == 1);
    CHECK(SymbolSpec::zero().support_depth() == 0);
    CHECK(SymbolSpec::zero().is_zero());
    CHECK_FALSE(SymbolSpec(RadialGeometric{1.0, 0.5}).support_depth().has_value());
    CHECK(SymbolSpec(RadialGeometric{1.0, 0.0}).support_depth() == 0);
    CHECK(SymbolSpec(RadialTable{{1.0, 0.0, 3.0, 0.0}}).support_depth() == 2);
    CHECK_FALSE(SymbolSpec(SectorIndicator{{0}, 1.0}).support_depth().has_value());
    // An explicit zero entry is not support.
    CHECK(SymbolSpec(FiniteSupport{{{{0, 1}, 0.0}}}).is_zero());
}

TEST_CASE("closure of the range") {
    const auto spec = TreeSpec::homogeneous(2);
    const auto finite = RangeClosure::of(pair_symbol(), spec);
    CHECK(finite.points() == std::vector<Complex>{0.0, 1.0, 2.0});
    CHECK(finite.distance(3.0) == 1.0);
    CHECK(finite.distance(Complex{0.5, 0}) == 0.5);
    CHECK(finite.sup_abs() == 2.0);

    const auto geo = RangeClosure::of(SymbolSpec(RadialGeometric{1.0, 0.5}), spec);
    REQUIRE(geo.geometric());
    CHECK(geo.contains_zero());
    CHECK(geo.distance(0.3) == doctest::Approx(0.05));
    CHECK(geo.distance(3.0) == doctest::Approx(2.0));
    CHECK(geo.distance(Complex{-2, 1}) == doctest::Approx(std::sqrt(5.0)));
    CHECK(geo.distance(0.0) == 0.0);
    CHECK(geo.sup_abs() == 1.0);
    // The set {1, 1/2} misses 0 by 1/2 and lies inside the closure.
    CHECK(geo.hausdorff({1.0, 0.5}) == doctest::Approx(0.5));
    CHECK(geo.excess({1.0, 0.5}) == 0.0);
    CHECK(geo.excess({0.75}) == doctest::Approx(0.25));

    // A sector at the root is a constant symbol: the closure is {c}.
    const auto whole = RangeClosure::of(SymbolSpec(SectorIndicator{{}, 2.0}), spec);
    CHECK(whole.points() == std::vector<Complex>{2.0});
    CHECK_FALSE(whole.contains_zero());
    const auto part = RangeClosure::of(SymbolSpec(SectorIndicator{{1}, 2.0}), spec);
    CHECK(part.points() == std::vector<Complex>{0.0, 2.0});
}

TEST_CASE("norm reports of finite families do not depend on depth") {
    const auto spec = TreeSpec::homogeneous(2);
    const SymbolSpec s(FiniteSupport{{{{}, 1.0}, {{0, 1}, Complex{0, -2}}, {{1}, 0.5}}});
    for (SymbolPart part : {SymbolPart::phi, SymbolPart::derivative, SymbolPart::weighted_derivative}) {
        for (const Exponent& p : {one, two, inf}) {
            // Derivatives reach one level below the deepest support vertex.
            const auto base = norm_report(s, build_truncation(spec, 3), p, part);
            CHECK(base.membership == Certified::yes);
            for (std::size_t d = 4; d <= 6; ++d) {
                const auto r = norm_report(s, build_truncation(spec, d), p, part);
                CHECK(r.truncated_norm == doctest::Approx(base.truncated_norm).epsilon(1e-14));
                CHECK(r.membership == Certified::yes);
            }
        }
    }
    // phi = e_o: phi' = e_o - (e_{o.0} + e_{o.1}), so ||phi'||_1 = 3.
    const SymbolSpec root(FiniteSupport{{{{}, 1.0}}});
    const auto r = norm_report(root, build_truncation(spec, 0), one, SymbolPart::derivative);
    CHECK(r.truncated_norm + r.tail_bound.value_or(0.0) == doctest::Approx(3.0));
}

TEST_CASE("norm reports of the geometric family") {
    const auto spec = TreeSpec::homogeneous(2);
    const SymbolSpec s(RadialGeometric{1.0, 0.5});
    // sum_n 2^n 4^-n = 2
    for (std::size_t d = 0; d <= 6; ++d) {
        const auto r = norm_report(s, build_truncation(spec, d), two, SymbolPart::phi);
        CHECK(r.membership == Certified::yes);
        CHECK(r.truncated_norm == doctest::Approx(std::sqrt(2.0 - std::ldexp(1.0, -static_cast<int>(d)))));
        REQUIRE(r.tail_bound);
        CHECK(*r.tail_bound == doctest::Approx(std::sqrt(std::ldexp(1.0, -static_cast<int>(d)))));
    }
    // sum_n 2^n 2^-n diverges.
    CHECK(norm_report(s, build_truncation(spec, 3), one, SymbolPart::phi).membership == Certified::no);
    CHECK(norm_report(SymbolSpec(RadialGeometric{1.0, 0.9}), build_truncation(spec, 3), two, SymbolPart::phi)
              .membership == Certified::no);
    CHECK(norm_report(s, build_truncation(spec, 3), inf, SymbolPart::phi).membership == Certified::yes);
    // phi-hat carries a polynomial factor, still summable when b|r|^q < 1.
    CHECK(norm_report(s, build_truncation(spec, 3), two, SymbolPart::weighted_derivative).membership ==
          Certified::yes);
}

TEST_CASE("sector symbols are never in l^q for finite q") {
    const auto t = build_truncation(TreeSpec::homogeneous(2), 3);
    const SymbolSpec s(SectorIndicator{{0}, 1.0});
    CHECK(norm_report(s, t, two, SymbolPart::phi).membership == Certified::no);
    CHECK(norm_report(s, t, inf, SymbolPart::phi).membership == Certified::yes);
    // phi' is e_{o.0}, phi-hat is 2 e_{o.0}.
    const auto d = norm_report(s, t, one, SymbolPart::derivative);
    CHECK(d.membership == Certified::yes);
    CHECK(d.truncated_norm == 1.0);
    CHECK(norm_report(s, t, one, SymbolPart::weighted_derivative).truncated_norm == 2.0);
}
