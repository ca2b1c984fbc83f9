#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "arbor/operators.hpp"
#include "arbor/symbol.hpp"

namespace arbor {

/// <T_phi f, f> = sum |f|^2 phi_- + sum conj(f) Delta(f phi'), evaluated
/// without forming T_phi f.
Complex sesquilinear_form(const TreeFunction& phi, const TreeFunction& f);

/// A test function whose form value is not a nonnegative real.
struct FormWitness {
    enum class Kind {
        /// f = e_xi; the form value is phi(xi).
        diagonal,
        /// f = e_xi + i e_eta with eta a child of xi; the form value is
        /// [phi(xi) + phi(eta)] + i [phi(eta) - phi(xi)].
        adjacent_pair,
    };

    Kind kind = Kind::diagonal;
    VertexId xi = 0;
    VertexId eta = 0;
    VertexPath xi_path;
    VertexPath eta_path;
    /// Truncation depth on which the ids are valid.
    std::size_t depth = 0;
    Complex form_value;
    TreeFunction g;
};

enum class StructureVerdict {
    self_adjoint_and_positive,
    not_self_adjoint,
    /// phi real, nonzero and constant on the truncation: nothing here can
    /// witness the failure.
    real_constant_undecided,
};
std::string to_string(StructureVerdict v);

struct StructureReport {
    bool is_zero_symbol = false;
    StructureVerdict verdict = StructureVerdict::real_constant_undecided;
    std::optional<FormWitness> witness;
    std::string note;
};

/// Scans vertices in id order for a non-real value, then tree edges in id
/// order for the first parent/child pair with different values.
StructureReport self_adjointness_test(const TreeFunction& phi);

/// As above, but a truncation that is too shallow to show a witness is
/// deepened using what the family says about the infinite tree.
StructureReport self_adjointness_test(const SymbolSpec& s, const TreePtr& tree);

enum class PositivityVerdict { positive, not_positive, undecided };
std::string to_string(PositivityVerdict v);

struct PositivityReport {
    PositivityVerdict verdict = PositivityVerdict::undecided;
    StructureReport structure;
    /// Deterministic counterexample: a diagonal witness when some phi(w) is
    /// not a nonnegative real, else the self-adjointness witness.
    std::optional<FormWitness> counterexample;
    std::size_t trials = 0;
    /// First random trial whose form value has |Im| > 1e-12 or Re < -1e-12.
    std::optional<std::size_t> failing_trial;
    Complex failing_value;
    double max_abs_form = 0.0;
};

PositivityReport positivity_test(const TreeFunction& phi, std::size_t trials, std::uint64_t seed);

/// Threshold for numeric_rank, relative to the largest singular value.
inline constexpr double rank_threshold = 1e-9;

std::size_t numeric_rank(const Eigen::MatrixXcd& m, double relative_threshold = rank_threshold);

enum class RankVerdict { finite_rank, infinite_rank_evidence, undecided };
std::string to_string(RankVerdict v);

struct RankReport {
    bool support_finite = true;
    /// Depth of the deepest nonzero value (finite support only).
    std::size_t support_depth = 0;
    /// Vertices where phi != 0, as ids on the truncation of depth
    /// `support_depth` (finite support) or of the first window depth.
    std::vector<VertexId> support;
    /// |W|, the number of vertices of depth <= support_depth; bounds the rank.
    std::optional<std::size_t> rank_bound;
    std::vector<std::pair<std::size_t, std::size_t>> rank_by_depth;
    RankVerdict verdict = RankVerdict::undecided;
    std::size_t rank = 0;
    bool bound_respected = true;
};

/// Numeric rank of the materialized operator across depths
/// [depth_min, depth_max]. Throws std::invalid_argument when the window
/// starts below the support depth of a finitely supported family.
RankReport finite_rank_test(const SymbolSpec& s, const TreeSpec& spec, std::size_t depth_min,
                            std::size_t depth_max);

}  // namespace arbor
