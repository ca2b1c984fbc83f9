#include "arbor/random.hpp"

#include <cmath>

namespace arbor {

double Rng::dyadic(int bits) {
    const auto span = std::int64_t{1} << bits;
    const auto k = static_cast<std::int64_t>(index(static_cast<std::size_t>(2 * span + 1))) - span;
    return std::ldexp(static_cast<double>(k), -bits);
}

Complex Rng::in_disk() {
    for (;;) {
        const Complex z = in_box();
        if (std::norm(z) <= 1.0) return z;
    }
}

TreeFunction random_function(const TreePtr& tree, Rng& rng) {
    TreeFunction f(tree);
    for (auto& z : f.values()) z = rng.in_box();
    return f;
}

TreeFunction random_dyadic_function(const TreePtr& tree, Rng& rng, bool complex_values) {
    TreeFunction f(tree);
    for (auto& z : f.values()) {
        const double re = rng.dyadic(4);
        z = complex_values ? Complex{re, rng.dyadic(4)} : Complex{re, 0.0};
    }
    return f;
}

}  // namespace arbor
