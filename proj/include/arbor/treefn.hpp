#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "arbor/tree.hpp"

namespace arbor {

using Complex = std::complex<double>;

/// Exponent p in [1, inf] of an l^p space.
class Exponent {
public:
    static Exponent finite(double p);
    static Exponent infinity() noexcept { return Exponent(0.0, true); }
    /// Accepts a decimal number >= 1 or "inf" / "infinity".
    static Exponent parse(std::string_view text);

    bool is_infinite() const noexcept { return infinite_; }
    /// Only meaningful when finite.
    double value() const noexcept { return p_; }
    /// 1/p + 1/q = 1, with 1 <-> inf.
    Exponent conjugate() const noexcept;
    std::string str() const;

    bool operator==(const Exponent&) const = default;

private:
    Exponent(double p, bool infinite) noexcept : p_(p), infinite_(infinite) {}
    double p_ = 2.0;
    bool infinite_ = false;
};

/// Complex function on the vertices of a truncation, extended by zero to the
/// infinite tree. Every value beyond depth D is exactly 0.
class TreeFunction {
public:
    explicit TreeFunction(TreePtr tree);
    TreeFunction(TreePtr tree, std::vector<Complex> values);

    /// e_w
    static TreeFunction indicator(TreePtr tree, VertexId w);
    static TreeFunction constant(TreePtr tree, Complex value);

    const TruncatedTree& tree() const noexcept { return *tree_; }
    const TreePtr& tree_ptr() const noexcept { return tree_; }
    std::size_t size() const noexcept { return values_.size(); }

    Complex operator[](VertexId v) const { return values_[v]; }
    Complex& operator[](VertexId v) { return values_[v]; }
    std::span<const Complex> values() const noexcept { return values_; }
    std::span<Complex> values() noexcept { return values_; }

    TreeFunction& operator+=(const TreeFunction& other);
    TreeFunction& operator-=(const TreeFunction& other);
    TreeFunction& operator*=(Complex a);

    friend TreeFunction operator+(TreeFunction a, const TreeFunction& b) { return a += b; }
    friend TreeFunction operator-(TreeFunction a, const TreeFunction& b) { return a -= b; }
    friend TreeFunction operator*(Complex a, TreeFunction f) { return f *= a; }

    bool is_zero() const noexcept;

private:
    TreePtr tree_;
    std::vector<Complex> values_;
};

/// Throws std::invalid_argument unless both functions live on the same tree.
void require_same_tree(const TreeFunction& a, const TreeFunction& b);

/// Pointwise product.
TreeFunction pointwise_product(const TreeFunction& a, const TreeFunction& b);

double p_norm(const TreeFunction& f, Exponent p);

/// sum_v f(v) conj(g(v))
Complex dual_pairing(const TreeFunction& f, const TreeFunction& g);

/// f_-(v) = f(parent(v)), f_-(root) = 0.
///
/// On the infinite tree f_- is also nonzero one level below the truncation
/// (it equals f at depth D there); that layer is not stored. Every consumer
/// multiplies it by a function that vanishes beyond depth D.
TreeFunction shift_to_parent(const TreeFunction& f);

/// f' = f - f_-
TreeFunction derivative(const TreeFunction& f);

/// (|v| + 1) f'(v)
TreeFunction weighted_derivative(const TreeFunction& f);

/// max_v |a(v) - b(v)|
double max_abs_diff(const TreeFunction& a, const TreeFunction& b);

}  // namespace arbor
