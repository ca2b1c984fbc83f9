#include "arbor/structure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>

#include "arbor/random.hpp"

namespace arbor {

Complex sesquilinear_form(const TreeFunction& phi, const TreeFunction& f) {
    require_same_tree(phi, f);
    const TreeFunction shifted = shift_to_parent(phi);
    const TreeFunction tail = apply_delta(pointwise_product(f, derivative(phi)));
    Complex diag{};
    Complex off{};
    for (VertexId v = 0; v < f.size(); ++v) {
        diag += std::norm(f[v]) * shifted[v];
        off += std::conj(f[v]) * tail[v];
    }
    return diag + off;
}

std::string to_string(StructureVerdict v) {
    switch (v) {
    case StructureVerdict::self_adjoint_and_positive: return "self_adjoint_and_positive";
    case StructureVerdict::not_self_adjoint: return "not_self_adjoint";
    case StructureVerdict::real_constant_undecided: return "real_but_nonconstant_note";
    }
    return "?";
}

std::string to_string(PositivityVerdict v) {
    switch (v) {
    case PositivityVerdict::positive: return "positive";
    case PositivityVerdict::not_positive: return "not_positive";
    case PositivityVerdict::undecided: return "undecided";
    }
    return "?";
}

std::string to_string(RankVerdict v) {
    switch (v) {
    case RankVerdict::finite_rank: return "finite_rank";
    case RankVerdict::infinite_rank_evidence: return "infinite_rank_evidence";
    case RankVerdict::undecided: return "undecided";
    }
    return "?";
}

namespace {

FormWitness diagonal_witness(const TreeFunction& phi, VertexId w) {
    TreeFunction g = TreeFunction::indicator(phi.tree_ptr(), w);
    const Complex value = sesquilinear_form(phi, g);
    return FormWitness{.kind = FormWitness::Kind::diagonal,
                       .xi = w,
                       .eta = w,
                       .xi_path = phi.tree().path_of(w),
                       .eta_path = phi.tree().path_of(w),
                       .depth = phi.tree().depth_limit(),
                       .form_value = value,
                       .g = std::move(g)};
}

FormWitness pair_witness(const TreeFunction& phi, VertexId xi, VertexId eta) {
    TreeFunction g(phi.tree_ptr());
    g[xi] = 1.0;
    g[eta] = Complex{0.0, 1.0};
    const Complex value = sesquilinear_form(phi, g);
    return FormWitness{.kind = FormWitness::Kind::adjacent_pair,
                       .xi = xi,
                       .eta = eta,
                       .xi_path = phi.tree().path_of(xi),
                       .eta_path = phi.tree().path_of(eta),
                       .depth = phi.tree().depth_limit(),
                       .form_value = value,
                       .g = std::move(g)};
}

}  // namespace

StructureReport self_adjointness_test(const TreeFunction& phi) {
    StructureReport rep;
    rep.is_zero_symbol = phi.is_zero();
    if (rep.is_zero_symbol) {
        rep.verdict = StructureVerdict::self_adjoint_and_positive;
        return rep;
    }
    for (VertexId w = 0; w < phi.size(); ++w) {
        if (phi[w].imag() != 0.0) {
            rep.verdict = StructureVerdict::not_self_adjoint;
            rep.witness = diagonal_witness(phi, w);
            rep.note = "phi takes a non-real value";
            return rep;
        }
    }
    const auto& parent = phi.tree().parent_array();
    for (VertexId v = 1; v < phi.size(); ++v) {
        if (phi[v] != phi[parent[v]]) {
            rep.verdict = StructureVerdict::not_self_adjoint;
            rep.witness = pair_witness(phi, parent[v], v);
            rep.note = "phi is real and differs across an edge";
            return rep;
        }
    }
    rep.verdict = StructureVerdict::real_constant_undecided;
    rep.note =
        "phi is a nonzero real constant on this truncation; a nonzero l^2 symbol cannot be constant "
        "on the whole tree, but no witness exists at this depth";
    return rep;
}

StructureReport self_adjointness_test(const SymbolSpec& s, const TreePtr& tree) {
    StructureReport rep = self_adjointness_test(realize_symbol(s, tree));
    if (rep.verdict != StructureVerdict::real_constant_undecided) return rep;

    if (const auto* sec = std::get_if<SectorIndicator>(&s.family()); sec && sec->base.empty()) {
        rep.note =
            "phi is the same constant on the whole infinite tree; it is not in l^2 and T_phi is "
            "that constant times the identity";
        return rep;
    }
    // Every other nonzero family changes value across some edge within
    // depth (support depth + 1), or between the root and its children.
    const std::size_t reach = s.support_depth().value_or(0) + 1;
    const std::size_t deeper = std::max(tree->depth_limit() + 1, reach);
    StructureReport deep = self_adjointness_test(realize_symbol(s, build_truncation(tree->spec(), deeper)));
    if (deep.witness) {
        deep.note += "; witness found on the truncation of depth " + std::to_string(deeper);
    }
    return deep;
}

PositivityReport positivity_test(const TreeFunction& phi, std::size_t trials, std::uint64_t seed) {
    PositivityReport rep;
    rep.structure = self_adjointness_test(phi);
    rep.trials = trials;

    if (rep.structure.is_zero_symbol) {
        rep.verdict = PositivityVerdict::positive;
    } else {
        for (VertexId w = 0; w < phi.size(); ++w) {
            if (phi[w].imag() != 0.0 || phi[w].real() < 0.0) {
                rep.counterexample = diagonal_witness(phi, w);
                break;
            }
        }
        if (!rep.counterexample && rep.structure.witness) rep.counterexample = rep.structure.witness;
        rep.verdict = rep.counterexample ? PositivityVerdict::not_positive : PositivityVerdict::undecided;
    }

    constexpr double tol = 1e-12;
    Rng rng(seed);
    for (std::size_t k = 0; k < trials; ++k) {
        const TreeFunction f = random_function(phi.tree_ptr(), rng);
        const Complex value = sesquilinear_form(phi, f);
        rep.max_abs_form = std::max(rep.max_abs_form, std::abs(value));
        if (!rep.failing_trial && (std::abs(value.imag()) > tol || value.real() < -tol)) {
            rep.failing_trial = k;
            rep.failing_value = value;
        }
    }
    return rep;
}

std::size_t numeric_rank(const Eigen::MatrixXcd& m, double relative_threshold) {
    if (m.size() == 0) return 0;
    const Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double cut = relative_threshold * sv(0);
    return static_cast<std::size_t>((sv.array() > cut).count());
}

RankReport finite_rank_test(const SymbolSpec& s, const TreeSpec& spec, std::size_t depth_min,
                            std::size_t depth_max) {
    if (depth_min > depth_max) throw std::invalid_argument("empty depth window");
    RankReport rep;
    const auto support_depth = s.support_depth();
    rep.support_finite = support_depth.has_value();
    if (rep.support_finite && depth_min < *support_depth) {
        throw std::invalid_argument("depth window starts at " + std::to_string(depth_min) +
                                    ", below the support depth " + std::to_string(*support_depth));
    }
    if (depth_min < s.min_realizable_depth()) {
        throw std::invalid_argument("depth window starts at " + std::to_string(depth_min) +
                                    ", above the deepest vertex named by the symbol");
    }

    const TreePtr support_tree =
        build_truncation(spec, rep.support_finite ? std::max(*support_depth, s.min_realizable_depth())
                                                  : depth_min);
    const TreeFunction phi0 = realize_symbol(s, support_tree);
    for (VertexId v = 0; v < phi0.size(); ++v) {
        if (phi0[v] != Complex{}) rep.support.push_back(v);
    }
    if (rep.support_finite) {
        rep.support_depth = *support_depth;
        std::size_t w = 0;
        if (!rep.support.empty()) {
            for (std::size_t n = 0; n <= *support_depth; ++n) {
                w += static_cast<std::size_t>(spec.level_size(n));
            }
        }
        rep.rank_bound = w;
    }

    const std::size_t count = depth_max - depth_min + 1;
    std::vector<std::size_t> ranks(count);
    const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const TreePtr t = build_truncation(spec, depth_min + static_cast<std::size_t>(k));
        ranks[k] = numeric_rank(materialize(realize_symbol(s, t)).entries);
    }
    for (std::size_t k = 0; k < count; ++k) rep.rank_by_depth.emplace_back(depth_min + k, ranks[k]);

    rep.rank = ranks.back();
    if (rep.rank_bound) {
        rep.bound_respected = std::all_of(ranks.begin(), ranks.end(),
                                          [&](std::size_t r) { return r <= *rep.rank_bound; });
    }
    const bool constant = std::all_of(ranks.begin(), ranks.end(),
                                      [&](std::size_t r) { return r == ranks.front(); });
    const bool increasing =
        count >= 2 && std::adjacent_find(ranks.begin(), ranks.end(), std::greater_equal<>()) ==
                          ranks.end();
    if (rep.support_finite && constant && rep.bound_respected) {
        rep.verdict = RankVerdict::finite_rank;
    } else if (!rep.support_finite && increasing) {
        rep.verdict = RankVerdict::infinite_rank_evidence;
    } else {
        rep.verdict = RankVerdict::undecided;
    }
    return rep;
}

}  // namespace arbor
