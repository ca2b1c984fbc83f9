#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "arbor/operators.hpp"
#include "arbor/symbol.hpp"

namespace arbor {

// --- boundedness -----------------------------------------------------------

enum class BoundednessVerdict { certified_bounded, not_certified };
std::string to_string(BoundednessVerdict v);

/// Sufficient condition for boundedness of T_phi on l^p:
///   p < inf: phi and phi-hat in l^q;  p = inf: phi and phi' in l^1.
/// One-directional; a failed check never means unbounded.
struct BoundednessCertificate {
    Exponent p = Exponent::finite(2.0);
    Exponent q = Exponent::finite(2.0);
    std::vector<NormReport> checks;
    BoundednessVerdict verdict = BoundednessVerdict::not_certified;
};

BoundednessCertificate boundedness_certificate(const SymbolSpec& s, const TreePtr& tree,
                                               Exponent p);

// --- kernel of nabla --------------------------------------------------------

/// Existence of a nonzero g in l^p with nabla g = 0 on the infinite tree.
struct KernelWitness {
    enum class Shape {
        none,
        /// g(v) = 1 / (number of vertices at depth |v|); level-regular trees.
        equal_split,
        /// g = 1 on the first-child path down to the tail depth K, then split
        /// equally inside the sector of the depth-K vertex.
        path_then_split,
        /// g = 1 on the first-child branch o, o.0, o.0.0, ...
        branch_indicator,
    };

    Exponent p = Exponent::finite(2.0);
    Certified exists = Certified::unknown;
    Shape shape = Shape::none;
    std::string reason;
    /// Analytic ||g||_p on the infinite tree (sup norm for p = inf).
    std::optional<double> norm;

    /// Values of g on the truncation. Requires exists == yes.
    TreeFunction realize(const TreePtr& tree) const;
};

std::string to_string(KernelWitness::Shape s);

KernelWitness nabla_kernel_witness(const TreeSpec& spec, Exponent p);

/// max |(nabla g)(u)| over vertices strictly above the truncation depth,
/// where g is taken as given on the whole truncation. For a function that is
/// not finitely supported, realize it one level deeper than the region of
/// interest.
double interior_nabla_defect(const TreeFunction& g);

// --- spectrum ----------------------------------------------------------------

struct ResolventSpotCheck {
    Complex lambda;
    double delta = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct SpectrumReport {
    Exponent p = Exponent::finite(2.0);
    KernelWitness kernel;
    /// phi, phi', phi-hat memberships in l^q, reported separately.
    std::vector<NormReport> memberships;
    RangeClosure closure;
    /// Values attained by phi on the infinite tree (first terms only for a
    /// geometric family: c r^n for n < 16, in order).
    std::vector<Complex> attained_values;
    bool attained_is_complete = true;
    /// 0 is an eigenvalue: either phi attains 0 or nabla has an l^p kernel.
    bool zero_included = false;
    /// "a", "b", or "undetermined" when the kernel verdict is unknown.
    std::string kernel_case;
    /// Diagonal of the materialized matrix in id order.
    std::vector<Complex> truncated_eigenvalues;

    // Filled by spectrum() only.
    std::optional<BoundednessCertificate> certificate;
    bool hypotheses_certified = false;
    std::vector<ResolventSpotCheck> spot_checks;
    std::string note;
};

/// Point spectrum with the nabla-kernel case split surfaced as data.
SpectrumReport point_spectrum(const SymbolSpec& s, const TreePtr& tree, Exponent p);

/// Full spectrum: the closure of the range, with resolvent spot checks at
/// sample points outside it on the given truncation.
SpectrumReport spectrum(const SymbolSpec& s, const TreePtr& tree, Exponent p,
                        std::uint64_t seed = 0);

// --- resolvent ---------------------------------------------------------------

struct ResolventParams {
    Complex lambda;
    /// inf over the closure of the range of |phi - lambda|.
    double delta = 0.0;
    /// min(delta, |lambda|)
    double delta0 = 0.0;

    /// Throws std::invalid_argument for lambda = 0 and std::domain_error when
    /// lambda lies in the closure.
    static ResolventParams for_closure(Complex lambda, const RangeClosure& closure);
    /// Uses the values of phi on the truncation together with 0 (the value
    /// beyond the truncation).
    static ResolventParams for_function(Complex lambda, const TreeFunction& phi);
};

struct ResolventResult {
    TreeFunction f;
    /// ||(T_phi - lambda) f - g||_p with T_phi applied by apply_toeplitz.
    double residual = 0.0;
};

/// f = (1/lambda) [Delta(phi/(phi - lambda) nabla g) - g], which solves
/// (T_phi - lambda) f = g.
ResolventResult resolvent_apply(const TreeFunction& phi, const ResolventParams& params,
                                const TreeFunction& g, Exponent p = Exponent::finite(2.0));

/// Residual tolerance used by spot checks and the CLI.
inline constexpr double resolvent_tolerance = 1e-10;

// --- operator norms -------------------------------------------------------------

struct PowerIterationSettings {
    double relative_tolerance = 1e-8;
    std::size_t max_iterations = 10000;
};

struct NormEstimate {
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Largest singular value by power iteration on A^* A, starting from the
/// normalized all-ones vector. Stops when ||A^*A x - mu x|| <= tol * mu.
NormEstimate spectral_norm_estimate(const Eigen::MatrixXcd& a, PowerIterationSettings settings = {});

/// p = 1: max column sum; p = inf: max row sum; p = 2: power iteration.
/// Other p throw std::invalid_argument.
double operator_norm_estimate(const OperatorMatrix& m, Exponent p);

/// Same quantity from the symbol alone, with O(N) matrix-vector products.
double operator_norm_estimate(const TreeFunction& phi, Exponent p);
NormEstimate spectral_norm_estimate(const TreeFunction& phi, PowerIterationSettings settings = {});

bool norm_supported(Exponent p) noexcept;

}  // namespace arbor
