#include "arbor/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "arbor/format.hpp"
#include "arbor/random.hpp"

namespace arbor {

std::string to_string(BoundednessVerdict v) {
    return v == BoundednessVerdict::certified_bounded ? "certified_bounded" : "not_certified";
}

BoundednessCertificate boundedness_certificate(const SymbolSpec& s, const TreePtr& tree,
                                               Exponent p) {
    BoundednessCertificate cert;
    cert.p = p;
    cert.q = p.conjugate();
    const SymbolPart second =
        p.is_infinite() ? SymbolPart::derivative : SymbolPart::weighted_derivative;
    cert.checks.push_back(norm_report(s, tree, cert.q, SymbolPart::phi));
    cert.checks.push_back(norm_report(s, tree, cert.q, second));
    const bool all_yes = std::all_of(cert.checks.begin(), cert.checks.end(),
                                     [](const NormReport& r) { return r.membership == Certified::yes; });
    cert.verdict = all_yes ? BoundednessVerdict::certified_bounded : BoundednessVerdict::not_certified;
    return cert;
}

// ---------------------------------------------------------------------------

std::string to_string(KernelWitness::Shape s) {
    switch (s) {
    case KernelWitness::Shape::none: return "none";
    case KernelWitness::Shape::equal_split: return "equal_split";
    case KernelWitness::Shape::path_then_split: return "path_then_split";
    case KernelWitness::Shape::branch_indicator: return "branch_indicator";
    }
    return "?";
}

KernelWitness nabla_kernel_witness(const TreeSpec& spec, Exponent p) {
    KernelWitness w;
    w.p = p;
    if (p.is_infinite()) {
        w.exists = Certified::yes;
        w.shape = KernelWitness::Shape::branch_indicator;
        w.norm = 1.0;
        w.reason = "no terminal vertices, so an infinite branch exists; its indicator is bounded";
        return w;
    }
    if (p.value() == 1.0) {
        w.exists = Certified::no;
        w.reason =
            "below any vertex v the level sums of a kernel element all equal g(v), so a nonzero "
            "value forces infinite l^1 mass";
        return w;
    }
    const std::size_t b = spec.tail_branching();
    const std::size_t k = spec.prefix_depth();
    if (b == 1) {
        w.exists = Certified::no;
        w.reason = "from depth " + std::to_string(k) +
                   " on every vertex has one child, so a kernel element is constant along each "
                   "branch and a nonzero one is not p-summable";
        return w;
    }
    const double pp = p.value();
    const double tail_ratio = std::pow(static_cast<double>(b), 1.0 - pp);
    w.exists = Certified::yes;
    if (spec.level_regular()) {
        w.shape = KernelWitness::Shape::equal_split;
        double sum = 0.0;
        for (std::size_t n = 0; n < k; ++n) sum += std::pow(spec.level_size(n), 1.0 - pp);
        sum += std::pow(spec.level_size(k), 1.0 - pp) / (1.0 - tail_ratio);
        w.norm = std::pow(sum, 1.0 / pp);
    } else {
        w.shape = KernelWitness::Shape::path_then_split;
        const double sum = static_cast<double>(k) + 1.0 / (1.0 - tail_ratio);
        w.norm = std::pow(sum, 1.0 / pp);
    }
    w.reason = "tail branching " + std::to_string(b) + " gives term ratio b^(1-p) = " +
               format_double(tail_ratio) + " < 1";
    return w;
}

TreeFunction KernelWitness::realize(const TreePtr& tree) const {
    if (exists != Certified::yes) throw std::logic_error("no kernel witness to realize");
    const TruncatedTree& t = *tree;
    TreeFunction g(tree);
    const auto& depth = t.depth_array();
    switch (shape) {
    case Shape::branch_indicator:
        for (std::size_t n = 0; n <= t.depth_limit(); ++n) g[*t.find(VertexPath(n, 0))] = 1.0;
        break;
    case Shape::equal_split: {
        std::vector<double> level(t.depth_limit() + 1);
        for (std::size_t n = 0; n < level.size(); ++n) level[n] = 1.0 / t.spec().level_size(n);
        for (VertexId v = 0; v < t.size(); ++v) g[v] = level[depth[v]];
        break;
    }
    case Shape::path_then_split: {
        const std::size_t k = t.spec().prefix_depth();
        const std::size_t top = std::min(k, t.depth_limit());
        for (std::size_t n = 0; n <= top; ++n) g[*t.find(VertexPath(n, 0))] = 1.0;
        if (k <= t.depth_limit()) {
            const double b = static_cast<double>(t.spec().tail_branching());
            for (VertexId u : t.sector_vertices(*t.find(VertexPath(k, 0)))) {
                g[u] = std::pow(b, -static_cast<double>(depth[u] - k));
            }
        }
        break;
    }
    case Shape::none: break;
    }
    return g;
}

double interior_nabla_defect(const TreeFunction& g) {
    const TreeFunction ng = apply_nabla(g);
    const auto& depth = g.tree().depth_array();
    const std::size_t limit = g.tree().depth_limit();
    double m = 0.0;
    for (VertexId v = 0; v < g.size(); ++v) {
        if (depth[v] < limit) m = std::max(m, std::abs(ng[v]));
    }
    return m;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kDiagonalViaMatrixLimit = 4096;

std::vector<Complex> truncated_diagonal(const TreeFunction& phi) {
    std::vector<Complex> diag(phi.size());
    if (phi.size() <= kDiagonalViaMatrixLimit) {
        const OperatorMatrix m = materialize(phi);
        for (std::size_t w = 0; w < diag.size(); ++w) {
            diag[w] = m.entries(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(w));
        }
    } else {
        // Same entries; avoids the N^2 matrix.
        for (std::size_t w = 0; w < diag.size(); ++w) diag[w] = phi[w];
    }
    return diag;
}

}  // namespace

SpectrumReport point_spectrum(const SymbolSpec& s, const TreePtr& tree, Exponent p) {
    SpectrumReport rep;
    rep.p = p;
    rep.kernel = nabla_kernel_witness(tree->spec(), p);
    const Exponent q = p.conjugate();
    for (SymbolPart part :
         {SymbolPart::phi, SymbolPart::derivative, SymbolPart::weighted_derivative}) {
        rep.memberships.push_back(norm_report(s, tree, q, part));
    }
    rep.closure = RangeClosure::of(s, tree->spec());

    bool zero_attained = false;
    if (rep.closure.geometric()) {
        const auto [c, r] = *rep.closure.geometric();
        Complex term = c;
        for (int n = 0; n < 16; ++n, term *= r) rep.attained_values.push_back(term);
        rep.attained_is_complete = false;
    } else {
        rep.attained_values = rep.closure.points();
        zero_attained = rep.closure.contains_zero();
    }

    switch (rep.kernel.exists) {
    case Certified::yes: rep.kernel_case = "b"; break;
    case Certified::no: rep.kernel_case = "a"; break;
    case Certified::unknown: rep.kernel_case = "undetermined"; break;
    }
    rep.zero_included = zero_attained || rep.kernel.exists == Certified::yes;
    rep.truncated_eigenvalues = truncated_diagonal(realize_symbol(s, tree));
    return rep;
}

SpectrumReport spectrum(const SymbolSpec& s, const TreePtr& tree, Exponent p, std::uint64_t seed) {
    SpectrumReport rep = point_spectrum(s, tree, p);
    rep.certificate = boundedness_certificate(s, tree, p);
    rep.hypotheses_certified = rep.certificate->verdict == BoundednessVerdict::certified_bounded;
    if (!rep.hypotheses_certified) rep.note = "theorem hypotheses not certified";

    const TreeFunction phi = realize_symbol(s, tree);
    Rng rng(seed);
    const TreeFunction g = random_function(tree, rng);
    const double radius = rep.closure.sup_abs() + 1.0;
    for (Complex dir : {Complex{1, 0}, Complex{0, 1}, Complex{-1, 0}, Complex{0, -1}}) {
        ResolventSpotCheck check;
        check.lambda = radius * dir;
        const auto params = ResolventParams::for_closure(check.lambda, rep.closure);
        check.delta = params.delta;
        check.residual = resolvent_apply(phi, params, g, p).residual;
        check.tolerance = resolvent_tolerance * std::max(1.0, p_norm(g, p));
        check.passed = check.residual < check.tolerance;
        rep.spot_checks.push_back(check);
    }
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

ResolventParams finish_params(Complex lambda, double delta) {
    if (lambda == Complex{}) throw std::invalid_argument("lambda = 0 is excluded from the resolvent");
    if (!(delta > 0.0)) {
        throw std::domain_error("lambda = " + format_complex(lambda) +
                                " lies in the closure of the range of phi");
    }
    return ResolventParams{lambda, delta, std::min(delta, std::abs(lambda))};
}

}  // namespace

ResolventParams ResolventParams::for_closure(Complex lambda, const RangeClosure& closure) {
    return finish_params(lambda, closure.distance(lambda));
}

ResolventParams ResolventParams::for_function(Complex lambda, const TreeFunction& phi) {
    double delta = std::abs(lambda);  // phi = 0 beyond the truncation
    for (Complex z : phi.values()) delta = std::min(delta, std::abs(z - lambda));
    return finish_params(lambda, delta);
}

ResolventResult resolvent_apply(const TreeFunction& phi, const ResolventParams& params,
                                const TreeFunction& g, Exponent p) {
    const Complex lambda = params.lambda;
    finish_params(lambda, params.delta);
    require_same_tree(phi, g);

    TreeFunction ratio(phi.tree_ptr());
    for (VertexId v = 0; v < phi.size(); ++v) {
        const Complex gap = phi[v] - lambda;
        if (gap == Complex{}) {
            throw std::domain_error("lambda = " + format_complex(lambda) + " equals phi at vertex " +
                                    std::to_string(v));
        }
        ratio[v] = phi[v] / gap;
    }
    TreeFunction f = apply_delta(pointwise_product(ratio, apply_nabla(g)));
    f -= g;
    f *= 1.0 / lambda;

    TreeFunction defect = apply_toeplitz(phi, f);
    defect -= lambda * f;
    defect -= g;
    return ResolventResult{std::move(f), p_norm(defect, p)};
}

// ---------------------------------------------------------------------------

namespace {

template <class Apply, class ApplyAdjoint>
NormEstimate power_iteration(Eigen::Index n, Apply apply, ApplyAdjoint apply_adjoint,
                             Eigen::Index fallback_start, PowerIterationSettings settings) {
    NormEstimate est;
    if (n == 0) {
        est.converged = true;
        return est;
    }
    Eigen::VectorXcd x = Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    bool restarted = false;
    double mu = 0.0;
    for (std::size_t k = 1; k <= settings.max_iterations; ++k) {
        est.iterations = k;
        const Eigen::VectorXcd y = apply(x);
        const Eigen::VectorXcd z = apply_adjoint(y);
        mu = y.squaredNorm();
        if (mu == 0.0) {
            // Start vector in the kernel: retry from the heaviest column.
            if (restarted) break;
            restarted = true;
            x.setZero();
            x(fallback_start) = 1.0;
            continue;
        }
        const double residual = (z - mu * x).norm();
        if (residual <= settings.relative_tolerance * mu) {
            est.converged = true;
            break;
        }
        x = z / z.norm();
    }
    est.value = std::sqrt(mu);
    return est;
}

}  // namespace

bool norm_supported(Exponent p) noexcept {
    return p.is_infinite() || p.value() == 1.0 || p.value() == 2.0;
}

NormEstimate spectral_norm_estimate(const Eigen::MatrixXcd& a, PowerIterationSettings settings) {
    if (a.size() == 0) return NormEstimate{0.0, 0, true};
    Eigen::Index heaviest = 0;
    const double max_col = a.colwise().norm().maxCoeff(&heaviest);
    NormEstimate est = power_iteration(
        a.cols(), [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd { return a * x; },
        [&](const Eigen::VectorXcd& y) -> Eigen::VectorXcd { return a.adjoint() * y; }, heaviest,
        settings);
    // Any column norm is also a lower bound on the largest singular value.
    est.value = std::max(est.value, max_col);
    return est;
}

NormEstimate spectral_norm_estimate(const TreeFunction& phi, PowerIterationSettings settings) {
    const TreePtr& tree = phi.tree_ptr();
    const auto& depth = tree->depth_array();
    const TreeFunction slope = derivative(phi);
    Eigen::Index heaviest = 0;
    double max_col = 0.0;
    for (VertexId w = 0; w < phi.size(); ++w) {
        const double c2 = std::norm(phi[w]) + (w == 0 ? 0.0 : depth[w] * std::norm(slope[w]));
        if (std::sqrt(c2) > max_col) {
            max_col = std::sqrt(c2);
            heaviest = static_cast<Eigen::Index>(w);
        }
    }
    auto to_fn = [&](const Eigen::VectorXcd& x) {
        return TreeFunction(tree, std::vector<Complex>(x.data(), x.data() + x.size()));
    };
    auto to_vec = [](const TreeFunction& f) {
        return Eigen::VectorXcd(Eigen::Map<const Eigen::VectorXcd>(
            f.values().data(), static_cast<Eigen::Index>(f.size())));
    };
    NormEstimate est = power_iteration(
        static_cast<Eigen::Index>(phi.size()),
        [&](const Eigen::VectorXcd& x) { return to_vec(apply_toeplitz(phi, to_fn(x))); },
        [&](const Eigen::VectorXcd& y) { return to_vec(apply_toeplitz_adjoint(phi, to_fn(y))); },
        heaviest, settings);
    est.value = std::max(est.value, max_col);
    return est;
}

double operator_norm_estimate(const OperatorMatrix& m, Exponent p) {
    if (!norm_supported(p)) {
        throw std::invalid_argument("operator norm estimate supports p in {1, 2, inf}, got " + p.str());
    }
    if (m.entries.size() == 0) return 0.0;
    if (p.is_infinite()) return m.entries.cwiseAbs().rowwise().sum().maxCoeff();
    if (p.value() == 1.0) return m.entries.cwiseAbs().colwise().sum().maxCoeff();
    return spectral_norm_estimate(m.entries).value;
}

double operator_norm_estimate(const TreeFunction& phi, Exponent p) {
    if (!norm_supported(p)) {
        throw std::invalid_argument("operator norm estimate supports p in {1, 2, inf}, got " + p.str());
    }
    const TruncatedTree& t = phi.tree();
    const auto& depth = t.depth_array();
    const TreeFunction slope = derivative(phi);
    if (p.is_infinite()) {
        // Row u: |phi(u)| + sum of |phi'| over strict descendants of u.
        std::vector<double> below(t.size(), 0.0);
        const auto& parent = t.parent_array();
        for (VertexId w = t.size(); w-- > 1;) below[parent[w]] += below[w] + std::abs(slope[w]);
        double m = 0.0;
        for (VertexId u = 0; u < t.size(); ++u) m = std::max(m, std::abs(phi[u]) + below[u]);
        return m;
    }
    if (p.value() == 1.0) {
        // Column w: |phi(w)| + |w| |phi'(w)|.
        double m = 0.0;
        for (VertexId w = 0; w < t.size(); ++w) {
            const double off = w == 0 ? 0.0 : static_cast<double>(depth[w]) * std::abs(slope[w]);
            m = std::max(m, std::abs(phi[w]) + off);
        }
        return m;
    }
    return spectral_norm_estimate(phi).value;
}

}  // namespace arbor
