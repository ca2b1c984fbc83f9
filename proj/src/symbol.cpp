#include "arbor/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "arbor/format.hpp"

namespace arbor {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

bool complex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

std::vector<Complex> distinct_values(std::vector<Complex> values) {
    std::sort(values.begin(), values.end(), complex_less);
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

// ---------------------------------------------------------------------------

SymbolSpec::SymbolSpec(Family family) : family_(std::move(family)) {
    std::visit(overloaded{
                   [](const FiniteSupport& f) {
                       std::set<VertexPath> seen;
                       for (const auto& [path, value] : f.entries) {
                           if (!seen.insert(path).second) {
                               throw std::invalid_argument("duplicate symbol entry for vertex " +
                                                           format_path(path));
                           }
                       }
                   },
                   [](const RadialGeometric& g) {
                       if (!(std::abs(g.r) < 1.0)) {
                           throw std::invalid_argument(
                               "radial_geometric ratio must satisfy |r| < 1, got |r| = " +
                               format_double(std::abs(g.r)));
                       }
                   },
                   [](const SectorIndicator&) {},
                   [](const RadialTable&) {},
               },
               family_);
}

std::string SymbolSpec::family_name() const {
    return std::visit(overloaded{
                          [](const FiniteSupport&) { return std::string("finite_support"); },
                          [](const RadialGeometric&) { return std::string("radial_geometric"); },
                          [](const SectorIndicator&) { return std::string("sector_indicator"); },
                          [](const RadialTable&) { return std::string("radial_table"); },
                      },
                      family_);
}

std::string SymbolSpec::describe() const {
    std::ostringstream out;
    std::visit(overloaded{
                   [&](const FiniteSupport& f) {
                       out << "finite_support{";
                       for (std::size_t i = 0; i < f.entries.size(); ++i) {
                           out << (i ? ", " : "") << format_path(f.entries[i].first) << ": "
                               << format_complex(f.entries[i].second);
                       }
                       out << "}";
                   },
                   [&](const RadialGeometric& g) {
                       out << "radial_geometric(c=" << format_complex(g.c)
                           << ", r=" << format_complex(g.r) << ")";
                   },
                   [&](const SectorIndicator& s) {
                       out << "sector_indicator(base=" << format_path(s.base)
                           << ", c=" << format_complex(s.c) << ")";
                   },
                   [&](const RadialTable& t) {
                       out << "radial_table(";
                       for (std::size_t i = 0; i < t.values.size(); ++i) {
                           out << (i ? ", " : "") << format_complex(t.values[i]);
                       }
                       out << ")";
                   },
               },
               family_);
    return out.str();
}

std::optional<std::size_t> SymbolSpec::support_depth() const {
    return std::visit(
        overloaded{
            [](const FiniteSupport& f) -> std::optional<std::size_t> {
                std::size_t d = 0;
                for (const auto& [path, value] : f.entries) {
                    if (value != Complex{}) d = std::max(d, path.size());
                }
                return d;
            },
            [](const RadialGeometric& g) -> std::optional<std::size_t> {
                if (g.c == Complex{} || g.r == Complex{}) return 0;
                return std::nullopt;
            },
            [](const SectorIndicator& s) -> std::optional<std::size_t> {
                if (s.c == Complex{}) return 0;
                return std::nullopt;
            },
            [](const RadialTable& t) -> std::optional<std::size_t> {
                std::size_t d = 0;
                for (std::size_t n = 0; n < t.values.size(); ++n) {
                    if (t.values[n] != Complex{}) d = n;
                }
                return d;
            },
        },
        family_);
}

bool SymbolSpec::is_zero() const {
    return std::visit(
        overloaded{
            [](const FiniteSupport& f) {
                return std::all_of(f.entries.begin(), f.entries.end(),
                                   [](const auto& e) { return e.second == Complex{}; });
            },
            [](const RadialGeometric& g) { return g.c == Complex{}; },
            [](const SectorIndicator& s) { return s.c == Complex{}; },
            [](const RadialTable& t) {
                return std::all_of(t.values.begin(), t.values.end(),
                                   [](Complex z) { return z == Complex{}; });
            },
        },
        family_);
}

std::size_t SymbolSpec::min_realizable_depth() const {
    return std::visit(overloaded{
                          [](const FiniteSupport& f) {
                              std::size_t d = 0;
                              for (const auto& e : f.entries) d = std::max(d, e.first.size());
                              return d;
                          },
                          [](const RadialGeometric&) { return std::size_t{0}; },
                          [](const SectorIndicator& s) { return s.base.size(); },
                          [](const RadialTable&) { return std::size_t{0}; },
                      },
                      family_);
}

namespace {

VertexId resolve(const TruncatedTree& t, const VertexPath& path) {
    if (path.size() > t.depth_limit()) {
        throw std::out_of_range("vertex " + format_path(path) + " is deeper than truncation depth " +
                                std::to_string(t.depth_limit()));
    }
    auto v = t.find(path);
    if (!v) throw std::out_of_range("vertex " + format_path(path) + " does not exist in the tree");
    return *v;
}

}  // namespace

TreeFunction realize_symbol(const SymbolSpec& s, const TreePtr& tree) {
    const TruncatedTree& t = *tree;
    TreeFunction phi(tree);
    const auto& depth = t.depth_array();
    std::visit(overloaded{
                   [&](const FiniteSupport& f) {
                       for (const auto& [path, value] : f.entries) phi[resolve(t, path)] = value;
                   },
                   [&](const RadialGeometric& g) {
                       std::vector<Complex> level(t.depth_limit() + 1);
                       level[0] = g.c;
                       for (std::size_t n = 1; n < level.size(); ++n) level[n] = level[n - 1] * g.r;
                       for (VertexId v = 0; v < t.size(); ++v) phi[v] = level[depth[v]];
                   },
                   [&](const SectorIndicator& sec) {
                       for (VertexId v : t.sector_vertices(resolve(t, sec.base))) phi[v] = sec.c;
                   },
                   [&](const RadialTable& tab) {
                       for (VertexId v = 0; v < t.size(); ++v) {
                           if (depth[v] < tab.values.size()) phi[v] = tab.values[depth[v]];
                       }
                   },
               },
               s.family());
    return phi;
}

// ---------------------------------------------------------------------------

RangeClosure RangeClosure::of(const SymbolSpec& s, const TreeSpec& /*tree*/) {
    RangeClosure rc;
    std::vector<Complex> pts;
    std::visit(overloaded{
                   [&](const FiniteSupport& f) {
                       for (const auto& e : f.entries) pts.push_back(e.second);
                       pts.push_back(0.0);
                   },
                   [&](const RadialGeometric& g) {
                       if (g.c == Complex{}) {
                           pts.push_back(0.0);
                       } else if (g.r == Complex{}) {
                           pts = {g.c, 0.0};
                       } else {
                           rc.geometric_ = std::make_pair(g.c, g.r);
                       }
                   },
                   [&](const SectorIndicator& sec) {
                       pts.push_back(sec.c);
                       // The sector of a non-root vertex misses part of the tree.
                       if (!sec.base.empty()) pts.push_back(0.0);
                   },
                   [&](const RadialTable& tab) {
                       pts = tab.values;
                       pts.push_back(0.0);
                   },
               },
               s.family());
    rc.points_ = distinct_values(std::move(pts));
    return rc;
}

bool RangeClosure::contains_zero() const noexcept {
    if (geometric_) return true;
    return std::find(points_.begin(), points_.end(), Complex{}) != points_.end();
}

namespace {

// Visits c r^n for n = 0, 1, ... until the terms are negligible relative to
// `scale`. Terms shrink monotonically in modulus since |r| < 1.
template <class F>
void for_each_term(Complex c, Complex r, double scale, F&& visit) {
    constexpr std::size_t cap = 2'000'000;
    const double floor = 1e-17 * std::max(scale, std::numeric_limits<double>::min());
    Complex t = c;
    for (std::size_t n = 0; n < cap; ++n) {
        if (!visit(t)) return;
        if (std::abs(t) <= floor) return;
        t *= r;
    }
}

double distance_to_set(Complex z, const std::vector<Complex>& set) {
    double best = kInf;
    for (Complex a : set) best = std::min(best, std::abs(z - a));
    return best;
}

}  // namespace

double RangeClosure::distance(Complex lambda) const {
    double best = distance_to_set(lambda, points_);
    if (geometric_) {
        const auto [c, r] = *geometric_;
        best = std::min(best, std::abs(lambda));
        const double lam = std::abs(lambda);
        for_each_term(c, r, lam, [&](Complex t) {
            best = std::min(best, std::abs(t - lambda));
            // Later terms are no closer than |lambda| - |t|.
            return lam - std::abs(t) < best;
        });
    }
    return best;
}

double RangeClosure::sup_abs() const {
    double m = 0.0;
    for (Complex z : points_) m = std::max(m, std::abs(z));
    if (geometric_) m = std::max(m, std::abs(geometric_->first));
    return m;
}

double RangeClosure::excess(const std::vector<Complex>& finite_set) const {
    double m = 0.0;
    for (Complex a : distinct_values(finite_set)) m = std::max(m, distance(a));
    return m;
}

double RangeClosure::hausdorff(const std::vector<Complex>& finite_set) const {
    const std::vector<Complex> a = distinct_values(finite_set);
    if (a.empty()) return kInf;
    double m = excess(a);
    for (Complex z : points_) m = std::max(m, distance_to_set(z, a));
    if (geometric_) {
        const auto [c, r] = *geometric_;
        m = std::max(m, distance_to_set(0.0, a));
        for_each_term(c, r, std::abs(c), [&](Complex t) {
            m = std::max(m, distance_to_set(t, a));
            return true;
        });
    }
    return m;
}

std::vector<Complex> RangeClosure::sample(std::size_t max_terms) const {
    std::vector<Complex> out = points_;
    if (geometric_) {
        Complex t = geometric_->first;
        for (std::size_t n = 0; n < max_terms; ++n, t *= geometric_->second) out.push_back(t);
        out.push_back(0.0);
    }
    return distinct_values(std::move(out));
}

std::string RangeClosure::describe() const {
    std::ostringstream out;
    if (geometric_) {
        out << "{" << format_complex(geometric_->first) << " * (" << format_complex(geometric_->second)
            << ")^n : n >= 0} u {0}";
        return out.str();
    }
    out << "{";
    for (std::size_t i = 0; i < points_.size(); ++i) {
        out << (i ? ", " : "") << format_complex(points_[i]);
    }
    out << "}";
    return out.str();
}

// ---------------------------------------------------------------------------

std::string to_string(SymbolPart part) {
    switch (part) {
    case SymbolPart::phi: return "phi";
    case SymbolPart::derivative: return "phi_prime";
    case SymbolPart::weighted_derivative: return "phi_hat";
    }
    return "?";
}

std::string to_string(Certified c) {
    switch (c) {
    case Certified::yes: return "yes";
    case Certified::no: return "no";
    case Certified::unknown: return "unknown";
    }
    return "?";
}

namespace {

TreeFunction part_of(const TreeFunction& phi, SymbolPart part) {
    switch (part) {
    case SymbolPart::phi: return phi;
    case SymbolPart::derivative: return derivative(phi);
    case SymbolPart::weighted_derivative: return weighted_derivative(phi);
    }
    return phi;
}

// Norm of the restriction to depths > D, from a realization deep enough to
// hold the whole support of the part.
double tail_of(const TreeFunction& part_fn, std::size_t depth_limit, Exponent p) {
    const auto& depth = part_fn.tree().depth_array();
    double acc = 0.0;
    for (VertexId v = 0; v < part_fn.size(); ++v) {
        if (depth[v] <= depth_limit) continue;
        const double a = std::abs(part_fn[v]);
        if (p.is_infinite()) {
            acc = std::max(acc, a);
        } else {
            acc += std::pow(a, p.value());
        }
    }
    return p.is_infinite() ? acc : std::pow(acc, 1.0 / p.value());
}

// Value of the part at depth n for a radial symbol with level values a.
Complex radial_part(Complex a_n, Complex a_prev, std::size_t n, SymbolPart part) {
    switch (part) {
    case SymbolPart::phi: return a_n;
    case SymbolPart::derivative: return a_n - a_prev;
    case SymbolPart::weighted_derivative: return static_cast<double>(n + 1) * (a_n - a_prev);
    }
    return a_n;
}

void finish_finite_tail(NormReport& rep, double tail) {
    rep.tail_bound = tail;
    rep.membership = Certified::yes;
}

void radial_table_tail(NormReport& rep, const RadialTable& tab, const TreeSpec& spec,
                       std::size_t depth_limit) {
    // The part vanishes beyond depth values.size().
    double acc = 0.0;
    for (std::size_t n = depth_limit + 1; n <= tab.values.size(); ++n) {
        const Complex a_n = n < tab.values.size() ? tab.values[n] : Complex{};
        const Complex a_prev = tab.values[n - 1];
        const double w = std::abs(radial_part(a_n, a_prev, n, rep.part));
        if (rep.p.is_infinite()) {
            acc = std::max(acc, w);
        } else if (w > 0.0) {
            acc += spec.level_size(n) * std::pow(w, rep.p.value());
        }
    }
    finish_finite_tail(rep, rep.p.is_infinite() ? acc : std::pow(acc, 1.0 / rep.p.value()));
    rep.reason = "finite support";
}

void radial_geometric_tail(NormReport& rep, const RadialGeometric& g, const TreeSpec& spec,
                           std::size_t depth_limit) {
    const double c = std::abs(g.c);
    const double r = std::abs(g.r);
    const double r1 = std::abs(g.r - 1.0);
    // |part| at depth n >= 1, before the level-size factor.
    auto weight = [&](std::size_t n) {
        switch (rep.part) {
        case SymbolPart::phi: return c * std::pow(r, static_cast<double>(n));
        case SymbolPart::derivative: return c * std::pow(r, static_cast<double>(n - 1)) * r1;
        case SymbolPart::weighted_derivative:
            return static_cast<double>(n + 1) * c * std::pow(r, static_cast<double>(n - 1)) * r1;
        }
        return 0.0;
    };

    const std::size_t first = depth_limit + 1;
    if (rep.p.is_infinite()) {
        std::size_t n = first;
        if (rep.part == SymbolPart::weighted_derivative) {
            // (n + 1) r^(n - 1) is unimodal; walk to the peak.
            while (static_cast<double>(n + 2) / static_cast<double>(n + 1) * r >= 1.0) ++n;
        }
        finish_finite_tail(rep, weight(n));
        rep.reason = "bounded: |r| < 1";
        return;
    }

    const double q = rep.p.value();
    const double b = static_cast<double>(spec.tail_branching());
    const double rho = b * std::pow(r, q);
    if (rho >= 1.0) {
        rep.membership = Certified::no;
        rep.tail_bound.reset();
        rep.reason = "divergent: term ratio b|r|^q = " + format_double(rho) + " >= 1";
        return;
    }

    // Terms u_n = L_n |part_n|^q. Below the tail depth K they are summed
    // directly, beyond it L_n = L_K b^(n - K).
    const std::size_t k_tail = spec.prefix_depth();
    const std::size_t n0 = std::max(first, k_tail);
    double acc = 0.0;
    for (std::size_t n = first; n < n0; ++n) acc += spec.level_size(n) * std::pow(weight(n), q);

    const double log_u0 = std::log(spec.level_size(n0)) + q * std::log(weight(n0));
    double u = std::exp(log_u0);
    if (rep.part != SymbolPart::weighted_derivative) {
        acc += u / (1.0 - rho);
    } else {
        // Ratio u_{n+1}/u_n = rho ((n + 2)/(n + 1))^q decreases to rho; sum
        // explicitly until it drops below (1 + rho)/2, then bound
        // geometrically.
        const double rho_bar = 0.5 * (1.0 + rho);
        std::size_t n = n0;
        constexpr std::size_t cap = 50'000'000;
        while (rho * std::pow(static_cast<double>(n + 2) / static_cast<double>(n + 1), q) >
               rho_bar) {
            acc += u;
            u *= rho * std::pow(static_cast<double>(n + 2) / static_cast<double>(n + 1), q);
            if (++n - n0 > cap) {
                rep.membership = Certified::unknown;
                rep.reason = "polynomial majorant did not settle";
                return;
            }
        }
        acc += u / (1.0 - rho_bar);
    }
    finish_finite_tail(rep, std::pow(acc, 1.0 / q));
    rep.reason = "convergent: term ratio b|r|^q = " + format_double(rho) + " < 1";
}

}  // namespace

NormReport norm_report(const SymbolSpec& s, const TreePtr& tree, Exponent p, SymbolPart part) {
    NormReport rep;
    rep.part = part;
    rep.p = p;
    const TreeFunction phi = realize_symbol(s, tree);
    rep.truncated_norm = p_norm(part_of(phi, part), p);

    const TreeSpec& spec = tree->spec();
    const std::size_t depth_limit = tree->depth_limit();

    if (s.is_zero()) {
        finish_finite_tail(rep, 0.0);
        rep.reason = "zero symbol";
        return rep;
    }

    std::visit(
        overloaded{
            [&](const FiniteSupport&) {
                // The part lives on depths <= support depth + 1.
                const std::size_t reach = *s.support_depth() + 1;
                double tail = 0.0;
                if (reach > depth_limit) {
                    const auto deep = build_truncation(spec, reach);
                    tail = tail_of(part_of(realize_symbol(s, deep), part), depth_limit, p);
                }
                finish_finite_tail(rep, tail);
                rep.reason = "finite support";
            },
            [&](const RadialGeometric& g) {
                if (g.r == Complex{}) {
                    radial_table_tail(rep, RadialTable{{g.c}}, spec, depth_limit);
                } else {
                    radial_geometric_tail(rep, g, spec, depth_limit);
                }
            },
            [&](const SectorIndicator& sec) {
                if (part == SymbolPart::phi) {
                    if (p.is_infinite()) {
                        finish_finite_tail(rep, std::abs(sec.c));
                        rep.reason = "bounded indicator";
                    } else {
                        rep.membership = Certified::no;
                        rep.reason =
                            "divergent: nonzero constant on a sector, level sizes never decrease "
                            "(term ratio >= 1)";
                    }
                } else {
                    // phi' = c e_base; base depth <= D since realize succeeded.
                    finish_finite_tail(rep, 0.0);
                    rep.reason = "derivative supported at the sector base";
                }
            },
            [&](const RadialTable& tab) { radial_table_tail(rep, tab, spec, depth_limit); },
        },
        s.family());
    return rep;
}

}  // namespace arbor
