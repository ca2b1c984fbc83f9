#pragma once

#include <cstdint>
#include <random>

#include "arbor/treefn.hpp"

namespace arbor {

/// Seeded generator with platform-independent output: draws are built from
/// raw mt19937_64 words rather than the standard distributions, whose
/// algorithms differ between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform on [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
    /// k / 2^bits with |k| <= 2^bits.
    double dyadic(int bits);
    /// Uniform on the square [-1, 1] x [-1, 1].
    Complex in_box() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }
    /// Uniform on the closed unit disk (rejection sampling).
    Complex in_disk();

private:
    std::mt19937_64 gen_;
};

/// Values drawn from Rng::in_box.
TreeFunction random_function(const TreePtr& tree, Rng& rng);

/// Dyadic values k/16 (real, or complex when `complex_values`), so sums and
/// differences of a few values are exact.
TreeFunction random_dyadic_function(const TreePtr& tree, Rng& rng, bool complex_values);

}  // namespace arbor
