#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "arbor/format.hpp"
#include "arbor/operators.hpp"
#include "arbor/random.hpp"
#include "arbor/spec_file.hpp"
#include "arbor/spectral.hpp"
#include "arbor/structure.hpp"
#include "report.hpp"

namespace arbor::cli {

namespace {

constexpr double identity_tolerance = 1e-12;
/// Largest truncation for the O(N^2) matrix checks in `verify`.
constexpr std::size_t dense_check_limit = 2048;

/// Bad command-line values; reported with exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Context {
    const Config& config;
    TreeSpec tree;
    std::optional<SymbolSpec> symbol;
    Exponent p;
    std::size_t depth_max;
};

Complex parse_lambda(const std::string& text) {
    try {
        const auto comma = text.find(',');
        if (comma == std::string::npos) return parse_complex(text);
        const Complex re = parse_complex(text.substr(0, comma));
        const Complex im = parse_complex(text.substr(comma + 1));
        if (re.imag() != 0.0 || im.imag() != 0.0) throw std::invalid_argument("expected two reals");
        return {re.real(), im.real()};
    } catch (const std::invalid_argument& e) {
        throw InputError("--lambda '" + text + "': " + e.what());
    }
}

std::vector<Complex> lambdas_of(const Config& c) {
    std::vector<Complex> out;
    for (const auto& s : c.lambdas) out.push_back(parse_lambda(s));
    return out;
}

/// Smallest power of two >= sup |closure| + 1; outside the closure with
/// distance at least 1 and exactly representable.
Complex default_lambda(const RangeClosure& closure) {
    const double target = closure.sup_abs() + 1.0;
    double l = 1.0;
    while (l < target) l *= 2.0;
    return l;
}

std::string config_hash(const Config& c, const std::string& tree_text, const std::string& symbol_text) {
    std::ostringstream s;
    s << "command=" << c.command << '\n'
      << "p=" << c.p << '\n'
      << "depth=" << c.depth << '\n'
      << "depth_max=" << (c.depth_max ? std::to_string(*c.depth_max) : "") << '\n';
    for (const auto& l : c.lambdas) s << "lambda=" << l << '\n';
    s << "trials=" << c.trials << '\n'
      << "seed=" << c.seed << '\n'
      << "format=" << (c.format == Format::json ? "json" : "csv") << '\n'
      << "tree=" << tree_text << '\n'
      << "symbol=" << symbol_text << '\n';
    return hex64(fnv1a64(s.str()));
}

Json config_json(const Context& ctx) {
    const Config& c = ctx.config;
    Json j;
    j["tree_file"] = c.tree_path;
    j["tree"] = ctx.tree.describe();
    if (ctx.symbol) {
        j["symbol_file"] = c.symbol_path;
        j["symbol"] = ctx.symbol->describe();
    }
    j["p"] = ctx.p.str();
    j["depth"] = c.depth;
    j["depth_max"] = ctx.depth_max;
    if (!c.lambdas.empty()) {
        Json ls = Json::array();
        for (Complex l : lambdas_of(c)) ls.push_back(format_complex(l));
        j["lambda"] = ls;
    }
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    return j;
}

Json norm_report_json(const NormReport& r) {
    return Json{{"part", to_string(r.part)},
                {"p", r.p.str()},
                {"truncated_norm", number(r.truncated_norm)},
                {"tail_bound", r.tail_bound ? number(*r.tail_bound) : Json()},
                {"membership", to_string(r.membership)},
                {"reason", r.reason}};
}

Table norm_table(std::string name, const std::vector<NormReport>& reports) {
    Table t{std::move(name), {"part", "p", "truncated_norm", "tail_bound", "membership", "reason"}, {}};
    for (const auto& r : reports) {
        const Json j = norm_report_json(r);
        t.rows.push_back({j["part"], j["p"], j["truncated_norm"], j["tail_bound"], j["membership"], j["reason"]});
    }
    return t;
}

const SymbolSpec& need_symbol(const Context& ctx) {
    if (!ctx.symbol) throw InputError("command '" + ctx.config.command + "' needs --symbol");
    return *ctx.symbol;
}

// --- tree ----------------------------------------------------------------------

int cmd_tree(const Context& ctx, Report& rep) {
    const TreePtr tree = build_truncation(ctx.tree, ctx.config.depth);
    const auto levels = tree->level_sizes();
    std::string joined;
    Table t{"levels", {"depth", "vertex_count"}, {}};
    for (std::size_t n = 0; n < levels.size(); ++n) {
        joined += (n ? "," : "") + std::to_string(levels[n]);
        t.rows.push_back({n, levels[n]});
    }
    rep.summary["tree"] = ctx.tree.describe();
    rep.summary["depth"] = ctx.config.depth;
    rep.summary["vertex_count"] = tree->size();
    rep.summary["levels"] = joined;
    rep.summary["tail_branching"] = ctx.tree.tail_branching();
    rep.tables.push_back(std::move(t));
    return exit_ok;
}

// --- verify --------------------------------------------------------------------

/// max |a - b| / max(1, max |b|)
double scaled_diff(const TreeFunction& a, const TreeFunction& b) {
    double m = 0.0;
    for (Complex z : b.values()) m = std::max(m, std::abs(z));
    return max_abs_diff(a, b) / std::max(1.0, m);
}

struct CheckResult {
    std::string name;
    std::size_t samples = 0;
    double deviation = 0.0;
    double tolerance = identity_tolerance;

    void add(double d) {
        ++samples;
        deviation = std::max(deviation, d);
    }
    bool passed() const { return deviation <= tolerance; }
};

std::vector<CheckResult> verify_depth(const TreeSpec& spec, std::size_t depth, std::size_t trials,
                                      std::uint64_t seed) {
    const TreePtr tree = build_truncation(spec, depth);
    Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (depth + 1)));

    CheckResult delta_nabla{"delta_nabla_inverse"}, nabla_delta{"nabla_delta_inverse"},
        two_path{"toeplitz_two_paths"}, telescoping{"derivative_telescoping"},
        form{"form_vs_dense_pairing"}, kernels{"parallel_vs_reference"};
    const auto& parent = tree->parent_array();

    for (std::size_t k = 0; k < trials; ++k) {
        const TreeFunction f = random_function(tree, rng);
        const TreeFunction phi = random_function(tree, rng);

        delta_nabla.add(scaled_diff(apply_delta(apply_nabla(f)), f));
        nabla_delta.add(scaled_diff(apply_nabla(apply_delta(f)), f));
        const TreeFunction tf = apply_toeplitz(phi, f);
        two_path.add(scaled_diff(apply_toeplitz_alt(phi, f), tf));

        const TreeFunction d = derivative(f);
        TreeFunction rebuilt(tree);
        for (VertexId v = 0; v < f.size(); ++v) rebuilt[v] = d[v] + (v ? rebuilt[parent[v]] : Complex{});
        telescoping.add(scaled_diff(rebuilt, f));

        const Complex dense = dual_pairing(tf, f);
        form.add(std::abs(sesquilinear_form(phi, f) - dense) / std::max(1.0, std::abs(dense)));

        double kd = scaled_diff(apply_nabla(f), reference::apply_nabla(f));
        kd = std::max(kd, scaled_diff(apply_delta(f), reference::apply_delta(f)));
        kd = std::max(kd, scaled_diff(shift_to_parent(f), reference::shift_to_parent(f)));
        kd = std::max(kd, scaled_diff(derivative(f), reference::derivative(f)));
        kd = std::max(kd, scaled_diff(tf, reference::apply_toeplitz(phi, f)));
        kernels.add(kd);
    }
    std::vector<CheckResult> out{delta_nabla, nabla_delta, two_path, telescoping, form, kernels};
    if (tree->size() > dense_check_limit) return out;

    // Matrix laws. Dyadic symbols make every expected entry exact.
    CheckResult column{"column_closed_form"}, law{"triangular_diagonal_law", 0, 0.0, 0.0},
        ref{"materialize_vs_reference", 0, 0.0, 0.0};
    const TreeFunction phi = random_function(tree, rng);
    for (VertexId w = 0; w < tree->size(); ++w) {
        column.add(scaled_diff(toeplitz_column(phi, w),
                               apply_toeplitz(phi, TreeFunction::indicator(tree, w))));
    }
    const TreeFunction dy = random_dyadic_function(tree, rng, true);
    const TreeFunction dy_prime = derivative(dy);
    const OperatorMatrix m = materialize(dy);
    const OperatorMatrix mr = reference::materialize(dy);
    const auto n = static_cast<Eigen::Index>(tree->size());
    for (Eigen::Index w = 0; w < n; ++w) {
        for (Eigen::Index u = 0; u < n; ++u) {
            const auto uu = static_cast<VertexId>(u), ww = static_cast<VertexId>(w);
            const Complex expected = u == w ? dy[ww] : tree->is_ancestor(uu, ww) ? dy_prime[ww] : Complex{};
            law.deviation = std::max(law.deviation, std::abs(m.entries(u, w) - expected));
            ref.deviation = std::max(ref.deviation, std::abs(m.entries(u, w) - mr.entries(u, w)));
        }
    }
    law.samples = ref.samples = 1;
    out.push_back(column);
    out.push_back(law);
    out.push_back(ref);
    return out;
}

int cmd_verify(const Context& ctx, Report& rep) {
    Table t{"checks", {"depth", "vertex_count", "check", "samples", "max_deviation", "tolerance", "passed"}, {}};
    bool all = true;
    std::size_t failures = 0;
    for (std::size_t d = ctx.config.depth; d <= ctx.depth_max; ++d) {
        const std::size_t n = build_truncation(ctx.tree, d)->size();
        for (const auto& c : verify_depth(ctx.tree, d, ctx.config.trials, ctx.config.seed)) {
            t.rows.push_back({d, n, c.name, c.samples, number(c.deviation), number(c.tolerance), c.passed()});
            if (!c.passed()) {
                all = false;
                ++failures;
            }
        }
    }
    rep.summary["passed"] = all;
    rep.summary["failed_checks"] = failures;
    rep.summary["deviation_scale"] = "max |a - b| / max(1, max |b|)";
    rep.summary["dense_check_limit"] = dense_check_limit;
    rep.tables.push_back(std::move(t));
    return all ? exit_ok : exit_verification_failure;
}

// --- spectrum ------------------------------------------------------------------

Json kernel_json(const KernelWitness& k) {
    return Json{{"exists", to_string(k.exists)},
                {"shape", to_string(k.shape)},
                {"norm", k.norm ? number(*k.norm) : Json()},
                {"reason", k.reason}};
}

void write_matrix(const std::string& path, const OperatorMatrix& m) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write matrix file '" + path + "'");
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".mtx") == 0) {
        write_matrix_market(f, m);
    } else {
        write_dense_csv(f, m);
    }
}

int cmd_spectrum(const Context& ctx, Report& rep) {
    const SymbolSpec& s = need_symbol(ctx);
    const TreePtr tree = build_truncation(ctx.tree, ctx.config.depth);
    const SpectrumReport r = spectrum(s, tree, ctx.p, ctx.config.seed);

    Json& j = rep.summary;
    j["closure"] = r.closure.describe();
    j["sup_abs"] = number(r.closure.sup_abs());
    Json attained = Json::array();
    for (Complex z : r.attained_values) attained.push_back(format_complex(z));
    j["attained_values"] = attained;
    j["attained_is_complete"] = r.attained_is_complete;
    j["zero_in_point_spectrum"] = r.zero_included;
    j["kernel_case"] = r.kernel_case;
    j["nabla_kernel"] = kernel_json(r.kernel);
    if (r.certificate) {
        j["boundedness"] = Json{{"q", r.certificate->q.str()}, {"verdict", to_string(r.certificate->verdict)}};
    }
    j["hypotheses_certified"] = r.hypotheses_certified;
    j["note"] = r.note;

    bool spots_ok = true;
    Table spots{"spot_checks", {"lambda_re", "lambda_im", "delta", "residual", "tolerance", "passed"}, {}};
    for (const auto& c : r.spot_checks) {
        spots.rows.push_back({number(c.lambda.real()), number(c.lambda.imag()), number(c.delta),
                              number(c.residual), number(c.tolerance), c.passed});
        spots_ok = spots_ok && c.passed;
    }
    j["spot_checks_passed"] = spots_ok;

    Table eig{"eigenvalues", {"id", "path", "depth", "re", "im"}, {}};
    for (VertexId v = 0; v < tree->size(); ++v) {
        const Complex z = r.truncated_eigenvalues[v];
        eig.rows.push_back({v, format_path(tree->path_of(v)), tree->depth(v), number(z.real()), number(z.imag())});
    }
    rep.tables.push_back(std::move(eig));
    rep.tables.push_back(norm_table("memberships", r.memberships));
    if (r.certificate) rep.tables.push_back(norm_table("boundedness_checks", r.certificate->checks));
    rep.tables.push_back(std::move(spots));

    if (!ctx.config.matrix_out.empty()) write_matrix(ctx.config.matrix_out, materialize(realize_symbol(s, tree)));
    return spots_ok ? exit_ok : exit_verification_failure;
}

// --- resolvent -----------------------------------------------------------------

int cmd_resolvent(const Context& ctx, Report& rep) {
    const SymbolSpec& s = need_symbol(ctx);
    const TreePtr tree = build_truncation(ctx.tree, ctx.config.depth);
    const TreeFunction phi = realize_symbol(s, tree);
    const RangeClosure closure = RangeClosure::of(s, ctx.tree);
    auto lambdas = lambdas_of(ctx.config);
    if (lambdas.empty()) lambdas.push_back(default_lambda(closure));

    Rng rng(ctx.config.seed);
    const TreeFunction g = random_function(tree, rng);
    const double g_norm = p_norm(g, ctx.p);
    const double tol = resolvent_tolerance * std::max(1.0, g_norm);
    const TreeFunction nabla_g = apply_nabla(g);

    Table t{"lambdas",
            {"lambda_re", "lambda_im", "status", "delta", "delta0", "residual", "tolerance", "nabla_defect",
             "reason"},
            {}};
    bool ok = true;
    for (Complex l : lambdas) {
        std::vector<Json> row{number(l.real()), number(l.imag())};
        try {
            const auto params = ResolventParams::for_closure(l, closure);
            const auto res = resolvent_apply(phi, params, g, ctx.p);
            const TreeFunction nabla_f = apply_nabla(res.f);
            double defect = 0.0;
            for (VertexId v = 0; v < tree->size(); ++v) {
                defect = std::max(defect, std::abs(nabla_f[v] - nabla_g[v] / (phi[v] - l)));
            }
            const bool pass = res.residual < tol && defect < tol;
            ok = ok && pass;
            row.insert(row.end(), {pass ? "pass" : "fail", number(params.delta), number(params.delta0),
                                   number(res.residual), number(tol), number(defect), ""});
        } catch (const std::logic_error& e) {
            row.insert(row.end(), {"rejected", Json(), Json(), Json(), Json(), Json(), e.what()});
        }
        t.rows.push_back(std::move(row));
    }
    rep.summary["closure"] = closure.describe();
    rep.summary["rhs"] = "seeded random values on the truncation";
    rep.summary["rhs_norm"] = number(g_norm);
    rep.summary["passed"] = ok;
    rep.tables.push_back(std::move(t));
    return ok ? exit_ok : exit_verification_failure;
}

// --- structure -----------------------------------------------------------------

Json witness_json(const FormWitness& w, const SymbolSpec& s, bool& sound) {
    const TreeFunction phi = realize_symbol(s, w.g.tree_ptr());
    const Complex dense = dual_pairing(apply_toeplitz(phi, w.g), w.g);
    const Complex closed = w.kind == FormWitness::Kind::diagonal
                               ? phi[w.xi]
                               : (phi[w.xi] + phi[w.eta]) + Complex{0.0, 1.0} * (phi[w.eta] - phi[w.xi]);
    const bool agrees = std::abs(dense - w.form_value) <= identity_tolerance &&
                        std::abs(closed - w.form_value) <= identity_tolerance;
    const bool fails_positivity =
        std::abs(dense.imag()) > identity_tolerance || dense.real() < -identity_tolerance;
    sound = agrees && fails_positivity;
    return Json{{"kind", w.kind == FormWitness::Kind::diagonal ? "diagonal" : "adjacent_pair"},
                {"xi", format_path(w.xi_path)},
                {"eta", format_path(w.eta_path)},
                {"truncation_depth", w.depth},
                {"form_value", complex_json(w.form_value)},
                {"dense_pairing", complex_json(dense)},
                {"closed_form", complex_json(closed)},
                {"sound", sound}};
}

int cmd_structure(const Context& ctx, Report& rep) {
    const SymbolSpec& s = need_symbol(ctx);
    if (ctx.p != Exponent::finite(2.0)) throw InputError("structure tests are defined for --p 2 only");
    const TreePtr tree = build_truncation(ctx.tree, ctx.config.depth);
    bool ok = true;

    const StructureReport sa = self_adjointness_test(s, tree);
    Json st{{"is_zero_symbol", sa.is_zero_symbol}, {"verdict", to_string(sa.verdict)}, {"note", sa.note}};
    if (sa.witness) {
        bool sound = false;
        st["witness"] = witness_json(*sa.witness, s, sound);
        ok = ok && sound;
    }
    rep.summary["self_adjointness"] = st;

    const PositivityReport pos = positivity_test(realize_symbol(s, tree), ctx.config.trials, ctx.config.seed);
    Json pj{{"verdict", to_string(pos.verdict)},
            {"trials", pos.trials},
            {"max_abs_form", number(pos.max_abs_form)},
            {"failing_trial", pos.failing_trial ? Json(*pos.failing_trial) : Json()},
            {"failing_value", pos.failing_trial ? complex_json(pos.failing_value) : Json()}};
    if (pos.counterexample) {
        bool sound = false;
        pj["counterexample"] = witness_json(*pos.counterexample, s, sound);
        ok = ok && sound;
    }
    rep.summary["positivity"] = pj;

    const RankReport rk = finite_rank_test(s, ctx.tree, ctx.config.depth, ctx.depth_max);
    Json support = Json::array();
    const TreePtr support_tree =
        build_truncation(ctx.tree, rk.support_finite ? std::max(rk.support_depth, s.min_realizable_depth())
                                                     : ctx.config.depth);
    for (VertexId v : rk.support) support.push_back(format_path(support_tree->path_of(v)));
    rep.summary["rank"] = Json{{"support_finite", rk.support_finite},
                               {"support_depth", rk.support_finite ? Json(rk.support_depth) : Json()},
                               {"support", support},
                               {"rank_bound", rk.rank_bound ? Json(*rk.rank_bound) : Json()},
                               {"verdict", to_string(rk.verdict)},
                               {"rank", rk.rank},
                               {"bound_respected", rk.bound_respected}};
    ok = ok && rk.bound_respected;

    Table t{"rank_by_depth", {"depth", "vertex_count", "numeric_rank", "rank_bound"}, {}};
    for (const auto& [d, r] : rk.rank_by_depth) {
        t.rows.push_back({d, build_truncation(ctx.tree, d)->size(), r, rk.rank_bound ? Json(*rk.rank_bound) : Json()});
    }
    rep.tables.push_back(std::move(t));
    rep.summary["passed"] = ok;
    return ok ? exit_ok : exit_verification_failure;
}

// --- converge ------------------------------------------------------------------

int cmd_converge(const Context& ctx, Report& rep) {
    const SymbolSpec& s = need_symbol(ctx);
    const RangeClosure closure = RangeClosure::of(s, ctx.tree);
    const auto lambdas = lambdas_of(ctx.config);
    const Complex lambda = lambdas.empty() ? default_lambda(closure) : lambdas.front();
    ResolventParams params;
    try {
        params = ResolventParams::for_closure(lambda, closure);
    } catch (const std::logic_error& e) {
        throw InputError(std::string("--lambda: ") + e.what());
    }
    const bool with_norm = norm_supported(ctx.p);

    Table t{"depths", {"depth", "vertex_count"}, {}};
    if (with_norm) t.columns.push_back("op_norm");
    t.columns.insert(t.columns.end(), {"eig_to_closure_distance", "hausdorff_distance", "resolvent_residual"});
    for (std::size_t d = ctx.config.depth; d <= ctx.depth_max; ++d) {
        const TreePtr tree = build_truncation(ctx.tree, d);
        const TreeFunction phi = realize_symbol(s, tree);
        // The materialized matrix is triangular with diagonal phi.
        const std::vector<Complex> eig = distinct_values({phi.values().begin(), phi.values().end()});
        const auto res = resolvent_apply(phi, params, TreeFunction::constant(tree, 1.0), ctx.p);
        std::vector<Json> row{d, tree->size()};
        if (with_norm) row.push_back(number(operator_norm_estimate(phi, ctx.p)));
        row.insert(row.end(), {number(closure.excess(eig)), number(closure.hausdorff(eig)), number(res.residual)});
        t.rows.push_back(std::move(row));
    }
    rep.summary["closure"] = closure.describe();
    rep.summary["lambda"] = complex_json(lambda);
    rep.summary["rhs"] = "all ones on the truncation";
    rep.summary["op_norm"] = with_norm ? "estimated" : "not available for this p";
    rep.tables.push_back(std::move(t));
    return exit_ok;
}

void emit(const Report& rep, const Config& c, std::ostream& out) {
    std::ostringstream buf;
    if (c.format == Format::json) {
        write_json(rep, buf);
    } else {
        write_csv(rep, buf);
    }
    if (c.out.empty()) {
        out << buf.str();
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw InputError("cannot write report file '" + c.out + "'");
    f << buf.str();
}

}  // namespace

int run(const Config& config, std::ostream& out, std::ostream& err) {
    try {
        if (std::find(commands.begin(), commands.end(), config.command) == commands.end()) {
            throw InputError("unknown command '" + config.command + "'");
        }
        if (config.tree_path.empty()) throw InputError("--tree is required");
        if (config.depth_max && *config.depth_max < config.depth) {
            throw InputError("--depth-max must be at least --depth");
        }
        Exponent p = Exponent::finite(2.0);
        try {
            p = Exponent::parse(config.p);
        } catch (const std::invalid_argument& e) {
            throw InputError(std::string("--p: ") + e.what());
        }
        const std::string tree_text = read_text_file(config.tree_path);
        std::string symbol_text;
        std::optional<SymbolSpec> symbol;
        if (!config.symbol_path.empty()) {
            symbol_text = read_text_file(config.symbol_path);
            symbol = parse_symbol_spec(symbol_text, config.symbol_path);
        }
        const Context ctx{config, parse_tree_spec(tree_text, config.tree_path), symbol, p,
                          config.depth_max.value_or(config.depth)};

        Report rep;
        rep.command = config.command;
        rep.config_hash = config_hash(config, tree_text, symbol_text);
        rep.config = config_json(ctx);

        int code = exit_ok;
        if (config.command == "tree") code = cmd_tree(ctx, rep);
        else if (config.command == "verify") code = cmd_verify(ctx, rep);
        else if (config.command == "spectrum") code = cmd_spectrum(ctx, rep);
        else if (config.command == "resolvent") code = cmd_resolvent(ctx, rep);
        else if (config.command == "structure") code = cmd_structure(ctx, rep);
        else code = cmd_converge(ctx, rep);

        emit(rep, config, out);
        if (code != exit_ok) err << "arbor: " << config.command << ": verification failed\n";
        return code;
    } catch (const std::exception& e) {
        err << "arbor: " << e.what() << '\n';
        return exit_input_error;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Toeplitz operators on rooted trees: identity checks, spectra, resolvents, structure"};
    app.set_version_flag("--version", tool_version);
    Config c;
    std::string format = "csv";
    app.add_option("command", c.command, "tree | verify | spectrum | resolvent | structure | converge")
        ->required()
        ->check(CLI::IsMember(commands));
    app.add_option("--tree", c.tree_path, "Tree spec file")->required();
    app.add_option("--symbol", c.symbol_path, "Symbol spec file");
    app.add_option("--p", c.p, "Exponent p >= 1 or inf")->capture_default_str();
    app.add_option("--depth", c.depth, "Truncation depth D")->required();
    app.add_option("--depth-max", c.depth_max, "Last depth of a window starting at --depth");
    app.add_option("--lambda", c.lambdas, "Spectral parameter RE,IM (repeatable)")->allow_extra_args(false);
    app.add_option("--trials", c.trials, "Random trials")->capture_default_str();
    app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
    app.add_option("--out", c.out, "Report file (default: stdout)");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--matrix-out", c.matrix_out, "spectrum: write the matrix (.mtx triplets, else dense CSV)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << tool_version << '\n';
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "arbor: " << e.what() << '\n';
        return exit_input_error;
    }
    c.format = format == "json" ? Format::json : Format::csv;
    return run(c, out, err);
}

}  // namespace arbor::cli
