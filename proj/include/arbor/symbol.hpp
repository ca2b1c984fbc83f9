#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "arbor/tree.hpp"
#include "arbor/treefn.hpp"

namespace arbor {

/// Finitely many (vertex, value) pairs; zero elsewhere.
struct FiniteSupport {
    std::vector<std::pair<VertexPath, Complex>> entries;
};

/// phi(v) = c r^|v|, with |r| < 1.
struct RadialGeometric {
    Complex c;
    Complex r;
};

/// phi = c on the sector of `base`, zero elsewhere.
struct SectorIndicator {
    VertexPath base;
    Complex c;
};

/// phi(v) = values[|v|] for |v| < values.size(), zero beyond.
struct RadialTable {
    std::vector<Complex> values;
};

/// Parametric symbol that can be realized on any truncation and carries
/// enough structure to reason about the infinite tree.
class SymbolSpec {
public:
    using Family = std::variant<FiniteSupport, RadialGeometric, SectorIndicator, RadialTable>;

    /// Validates the parameters (|r| < 1, no duplicate paths).
    explicit SymbolSpec(Family family);

    static SymbolSpec zero() { return SymbolSpec(FiniteSupport{}); }

    const Family& family() const noexcept { return family_; }
    std::string family_name() const;
    std::string describe() const;

    /// Depth of the deepest nonzero value, nullopt for infinite support. The
    /// zero symbol reports depth 0.
    std::optional<std::size_t> support_depth() const;
    bool is_zero() const;
    /// Smallest depth D for which realize() succeeds.
    std::size_t min_realizable_depth() const;

private:
    Family family_;
};

/// Pointwise evaluation on the truncation. Throws std::out_of_range if a
/// vertex path is deeper than the truncation or names a missing child.
TreeFunction realize_symbol(const SymbolSpec& s, const TreePtr& tree);

/// Closure of the range of a symbol over the whole infinite tree.
class RangeClosure {
public:
    static RangeClosure of(const SymbolSpec& s, const TreeSpec& tree);

    /// Isolated values, sorted by (re, im), without duplicates. For a
    /// geometric family these are not stored; see geometric().
    const std::vector<Complex>& points() const noexcept { return points_; }
    /// Set when the range is {c r^n : n >= 0}; 0 is then a limit point.
    const std::optional<std::pair<Complex, Complex>>& geometric() const noexcept {
        return geometric_;
    }
    bool contains_zero() const noexcept;

    /// inf over the closure of |z - lambda|.
    double distance(Complex lambda) const;
    /// sup over the closure of |z|.
    double sup_abs() const;
    /// Hausdorff distance between a finite set and the closure.
    double hausdorff(const std::vector<Complex>& finite_set) const;
    /// sup over the finite set of the distance to the closure.
    double excess(const std::vector<Complex>& finite_set) const;

    /// Members: all isolated points, and for the geometric family the first
    /// `max_terms` terms plus 0.
    std::vector<Complex> sample(std::size_t max_terms = 64) const;
    std::string describe() const;

private:
    std::vector<Complex> points_;
    std::optional<std::pair<Complex, Complex>> geometric_;
};

/// Sorts by (re, im) and removes exact duplicates.
std::vector<Complex> distinct_values(std::vector<Complex> values);

enum class SymbolPart { phi, derivative, weighted_derivative };
std::string to_string(SymbolPart part);

enum class Certified { yes, no, unknown };
std::string to_string(Certified c);

struct NormReport {
    SymbolPart part = SymbolPart::phi;
    Exponent p = Exponent::finite(2.0);
    /// Norm over the vertices of depth <= D of the infinite-tree function.
    double truncated_norm = 0.0;
    /// Upper bound on the norm of the part beyond depth D (sup for p = inf).
    std::optional<double> tail_bound;
    Certified membership = Certified::unknown;
    std::string reason;
};

/// Membership of phi, phi' or phi-hat in l^p, with an analytic bound on the
/// mass beyond the truncation.
NormReport norm_report(const SymbolSpec& s, const TreePtr& tree, Exponent p, SymbolPart part);

}  // namespace arbor
