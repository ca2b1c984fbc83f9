#include "arbor/treefn.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace arbor {

Exponent Exponent::finite(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw std::invalid_argument("exponent p must lie in [1, inf], got " + std::to_string(p));
    }
    return Exponent(p, false);
}

Exponent Exponent::parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF") return infinity();
    double p = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, p);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument("cannot parse exponent '" + std::string(text) + "'");
    }
    return finite(p);
}

Exponent Exponent::conjugate() const noexcept {
    if (infinite_) return Exponent(1.0, false);
    if (p_ == 1.0) return infinity();
    return Exponent(p_ / (p_ - 1.0), false);
}

std::string Exponent::str() const {
    if (infinite_) return "inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p_);
    return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------

TreeFunction::TreeFunction(TreePtr tree) : tree_(std::move(tree)) {
    if (!tree_) throw std::invalid_argument("TreeFunction needs a tree");
    values_.assign(tree_->size(), Complex{});
}

TreeFunction::TreeFunction(TreePtr tree, std::vector<Complex> values)
    : tree_(std::move(tree)), values_(std::move(values)) {
    if (!tree_) throw std::invalid_argument("TreeFunction needs a tree");
    if (values_.size() != tree_->size()) {
        throw std::invalid_argument("TreeFunction has " + std::to_string(values_.size()) +
                                    " values for " + std::to_string(tree_->size()) + " vertices");
    }
}

TreeFunction TreeFunction::indicator(TreePtr tree, VertexId w) {
    TreeFunction f(std::move(tree));
    if (w >= f.size()) throw std::out_of_range("indicator vertex out of range");
    f.values_[w] = 1.0;
    return f;
}

TreeFunction TreeFunction::constant(TreePtr tree, Complex value) {
    TreeFunction f(std::move(tree));
    std::fill(f.values_.begin(), f.values_.end(), value);
    return f;
}

TreeFunction& TreeFunction::operator+=(const TreeFunction& other) {
    require_same_tree(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

TreeFunction& TreeFunction::operator-=(const TreeFunction& other) {
    require_same_tree(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

TreeFunction& TreeFunction::operator*=(Complex a) {
    for (auto& x : values_) x *= a;
    return *this;
}

bool TreeFunction::is_zero() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](Complex z) { return z == Complex{}; });
}

void require_same_tree(const TreeFunction& a, const TreeFunction& b) {
    if (!a.tree().same_shape(b.tree())) {
        throw std::invalid_argument("functions live on different truncations");
    }
}

TreeFunction pointwise_product(const TreeFunction& a, const TreeFunction& b) {
    require_same_tree(a, b);
    TreeFunction out(a.tree_ptr());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

double p_norm(const TreeFunction& f, Exponent p) {
    if (p.is_infinite()) {
        double m = 0.0;
        for (Complex z : f.values()) m = std::max(m, std::abs(z));
        return m;
    }
    if (p.value() == 2.0) {
        double s = 0.0;
        for (Complex z : f.values()) s += std::norm(z);
        return std::sqrt(s);
    }
    if (p.value() == 1.0) {
        double s = 0.0;
        for (Complex z : f.values()) s += std::abs(z);
        return s;
    }
    // Scale by the max to avoid overflow in |z|^p.
    const double scale = p_norm(f, Exponent::infinity());
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (Complex z : f.values()) s += std::pow(std::abs(z) / scale, p.value());
    return scale * std::pow(s, 1.0 / p.value());
}

Complex dual_pairing(const TreeFunction& f, const TreeFunction& g) {
    require_same_tree(f, g);
    Complex s{};
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]);
    return s;
}

TreeFunction shift_to_parent(const TreeFunction& f) {
    const auto& parent = f.tree().parent_array();
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    std::vector<Complex> out(f.size());
    const auto in = f.values();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t v = 1; v < n; ++v) out[v] = in[parent[v]];
    return TreeFunction(f.tree_ptr(), std::move(out));
}

TreeFunction derivative(const TreeFunction& f) {
    const auto& parent = f.tree().parent_array();
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    std::vector<Complex> out(f.size());
    const auto in = f.values();
    if (n > 0) out[0] = in[0];
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t v = 1; v < n; ++v) out[v] = in[v] - in[parent[v]];
    return TreeFunction(f.tree_ptr(), std::move(out));
}

TreeFunction weighted_derivative(const TreeFunction& f) {
    TreeFunction out = derivative(f);
    const auto& depth = f.tree().depth_array();
    for (std::size_t v = 0; v < out.size(); ++v) out[v] *= static_cast<double>(depth[v] + 1);
    return out;
}

double max_abs_diff(const TreeFunction& a, const TreeFunction& b) {
    require_same_tree(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace arbor
