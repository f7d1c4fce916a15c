// spectral-lab: config-driven scenario runner for finite spectral triples.
//
// Exit codes: 0 success, 1 pass/fail check failed, 2 config parse error,
// 3 validation error, 4 compute error.  Reports go to stdout, diagnostics
// to stderr.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <speclab/action.hpp>
#include <speclab/io.hpp>
#include <speclab/lepton.hpp>
#include <speclab/report.hpp>
#include <speclab/rng.hpp>
#include <speclab/version.hpp>

namespace {

using namespace speclab;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitCompute = 4;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string format = "text";
    std::uint64_t seed = 0;
};

struct WeylArgs {
    double lambda_min = 10.0;
    double lambda_max = 40.0;
    std::int64_t steps = 31;
};

void attach_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "scenario config file (JSON)")->required();
    cmd->add_option("--set", args.overrides,
                    "override a config key, dotted path (e.g. --set action.lambda=2.0)");
    cmd->add_option("--format", args.format, "report format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--seed", args.seed, "seed for sampling subcommands");
}

// --set key=value: dotted path into the JSON tree; the value is parsed as
// JSON when possible, else taken as a string.
void apply_override(json& cfg, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigParseError("--set expects key=value, got '" + spec + "'");
    const std::string path = spec.substr(0, eq);
    const std::string raw = spec.substr(eq + 1);

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;
    }

    json* node = &cfg;
    std::size_t begin = 0;
    while (true) {
        const std::size_t dot = path.find('.', begin);
        const std::string key = path.substr(begin, dot - begin);
        if (key.empty())
            throw ConfigParseError("--set path '" + path + "' has an empty segment");
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        if (!node->is_object() && !node->is_null())
            throw ConfigParseError("--set path '" + path + "' descends into a non-object");
        node = &(*node)[key];
        begin = dot + 1;
    }
}

double resolve_tolerance(const json& cfg) {
    double tol = kDefaultTol;
    if (const char* env = std::getenv("SPECTRAL_LAB_TOL")) {
        try {
            std::size_t used = 0;
            tol = std::stod(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
        } catch (const std::exception&) {
            throw ConfigParseError(std::string("SPECTRAL_LAB_TOL is not a number: '") + env + "'");
        }
    }
    if (cfg.contains("tol")) tol = ioconf::number(cfg["tol"], "tol");
    if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
    return tol;
}

// Resolved triple source: builtin lepton (with its params) or inline matrices.
struct TripleSource {
    FiniteSpectralTriple triple;
    std::optional<LeptonModelParams> lepton;
    std::string kind;  // "lepton" | "inline"
};

TripleSource resolve_triple(const json& cfg) {
    if (!cfg.contains("triple"))
        throw ConfigParseError("config: missing section 'triple'");
    const json& t = cfg["triple"];
    const bool has_builtin = t.contains("builtin");
    const bool has_inline = t.contains("inline");
    if (has_builtin == has_inline)
        throw ValidationError("triple: exactly one of 'builtin' or 'inline' must be present");

    TripleSource src;
    if (has_builtin) {
        const json& b = t["builtin"];
        if (!b.is_string() || b.get<std::string>() != "lepton")
            throw ConfigParseError("triple.builtin: the only builtin triple is \"lepton\"");
        LeptonModelParams params;
        if (t.contains("params")) params = parse_lepton_params(t["params"], "triple.params");
        try {
            src.triple = build_lepton_triple(params);
        } catch (const InvalidParams& e) {
            throw ValidationError(e.what());
        }
        src.lepton = params;
        src.kind = "lepton";
    } else {
        src.triple = parse_triple(t["inline"], "triple.inline");
        src.kind = "inline";
        const Eigen::Index n = src.triple.d.rows();
        if (src.triple.gamma.rows() != n || src.triple.j.u.rows() != n)
            throw ValidationError("triple.inline: d, gamma and j_unitary dimensions disagree");
        for (const auto& g : src.triple.algebra_gens)
            if (g.rows() != n)
                throw ValidationError("triple.inline: generator dimension disagrees with d");
        if (src.triple.ko_dim % 2 != 0)
            throw ValidationError("triple.inline: odd KO-dimension is not supported");
    }
    return src;
}

ActionConfig resolve_action(const json& cfg, const TripleSource& src) {
    ActionConfig action;
    if (cfg.contains("action")) {
        const json& a = cfg["action"];
        if (a.contains("lambda")) action.lambda = ioconf::number(a["lambda"], "action.lambda");
        if (a.contains("cutoff")) action.cutoff = parse_cutoff(a["cutoff"], "action.cutoff");
        if (a.contains("physical_projector")) {
            const json& p = a["physical_projector"];
            if (p.is_string()) {
                if (p.get<std::string>() != "lepton-physical")
                    throw ConfigParseError(
                        "action.physical_projector: unknown builtin projector '" +
                        p.get<std::string>() + "'");
                if (!src.lepton)
                    throw ValidationError(
                        "action.physical_projector: 'lepton-physical' needs the builtin lepton triple");
                action.physical_projector = lepton_physical_projector(*src.lepton);
            } else {
                action.physical_projector = parse_matrix(p, "action.physical_projector");
            }
        }
    }
    try {
        validate(action, src.triple.d.rows());
    } catch (const Error& e) {
        throw ValidationError(e.what());
    }
    return action;
}

FermionState resolve_state(const json& cfg, const TripleSource& src, bool required) {
    const Eigen::Index n = src.triple.d.rows();
    if (!cfg.contains("state")) {
        if (required) throw ConfigParseError("config: missing section 'state'");
        return FermionState::zero(n);
    }
    const json& s = cfg["state"];
    if (s.contains("zero")) {
        if (!ioconf::boolean(s["zero"], "state.zero"))
            throw ConfigParseError("state.zero: must be true when present");
        return FermionState::zero(n);
    }
    if (!s.contains("psi"))
        throw ConfigParseError("state: expected 'psi' or 'zero'");
    FermionState st{parse_complex_vector(s["psi"], "state.psi")};
    if (st.psi.size() != n)
        throw ValidationError("state.psi: dimension " + std::to_string(st.psi.size()) +
                              " does not match the triple dimension " + std::to_string(n));
    return st;
}

LeptonModelParams resolve_params(const json& cfg) {
    if (cfg.contains("params")) return parse_lepton_params(cfg["params"], "params");
    if (cfg.contains("triple") && cfg["triple"].contains("params"))
        return parse_lepton_params(cfg["triple"]["params"], "triple.params");
    return LeptonModelParams{};
}

std::int64_t option_int(const json& cfg, const std::string& key, std::int64_t fallback) {
    if (!cfg.contains("options")) return fallback;
    const json& o = cfg["options"];
    if (!o.contains(key)) return fallback;
    return ioconf::integer(o[key], "options." + key);
}

struct Scenario {
    json cfg;
    TripleSource src;        // unresolved for triple-free commands
    double tol = kDefaultTol;
    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::text;
};

void stamp(RunReport& rep, const std::string& command) {
    rep.set("command", command);
    rep.set("version", kVersion);
}

struct RunResult {
    RunReport report;
    int exit_code = kExitOk;
};

RunResult do_check_axioms(Scenario& s) {
    RunResult r;
    stamp(r.report, "check-axioms");
    r.report.set("in.triple", s.src.kind);
    r.report.set("in.hilbert_dim", std::int64_t(s.src.triple.d.rows()));
    r.report.set("in.tol", s.tol);
    const AxiomReport axioms =
        check_axioms(s.src.triple, s.tol, int(option_int(s.cfg, "product_depth", 2)));
    for (const auto& c : axioms.checks) {
        r.report.set("residual." + c.name, c.residual);
        r.report.set("pass." + c.name, c.pass);
        if (!c.worst.empty()) r.report.set("worst." + c.name, c.worst);
    }
    r.report.set("pass", axioms.pass);
    r.exit_code = axioms.pass ? kExitOk : kExitCheckFailed;
    return r;
}

RunResult do_bosonic(Scenario& s) {
    RunResult r;
    stamp(r.report, "bosonic-action");
    const ActionConfig action = resolve_action(s.cfg, s.src);
    r.report.set("in.triple", s.src.kind);
    r.report.set("in.dim", std::int64_t(s.src.triple.d.rows()));
    r.report.set("in.lambda", action.lambda);
    r.report.set("in.cutoff", to_string(action.cutoff.kind));
    r.report.set("in.projected", bool(action.physical_projector));
    r.report.set("result", bosonic_action(s.src.triple, action));
    return r;
}

RunResult do_fermionic(Scenario& s) {
    RunResult r;
    stamp(r.report, "fermionic-action");
    const FermionState state = resolve_state(s.cfg, s.src, /*required=*/true);
    r.report.set("in.triple", s.src.kind);
    r.report.set("in.dim", std::int64_t(s.src.triple.d.rows()));
    r.report.set("in.psi_norm", state.psi.norm());
    r.report.set("result", fermionic_action(s.src.triple, state));
    r.report.set("residual.imaginary_part",
                 std::abs(fermionic_action_imag(s.src.triple, state)));
    return r;
}

RunResult do_extended(Scenario& s) {
    RunResult r;
    stamp(r.report, "extended-action");
    const ActionConfig action = resolve_action(s.cfg, s.src);
    const FermionState state = resolve_state(s.cfg, s.src, /*required=*/false);
    r.report.set("in.triple", s.src.kind);
    r.report.set("in.dim", std::int64_t(s.src.triple.d.rows()));
    r.report.set("in.lambda", action.lambda);
    r.report.set("in.cutoff", to_string(action.cutoff.kind));
    r.report.set("in.zero_state", state.is_zero());
    r.report.set("in.projected", bool(action.physical_projector));
    r.report.set("result", extended_action(s.src.triple, state, action));
    return r;
}

RunResult do_expand(Scenario& s) {
    RunResult r;
    stamp(r.report, "expand");
    const ActionConfig action = resolve_action(s.cfg, s.src);
    const FermionState state = resolve_state(s.cfg, s.src, /*required=*/true);
    const std::int64_t order = option_int(s.cfg, "order", 2);
    if (order < 0 || order > 4)
        throw ValidationError("options.order: must be in [0, 4]");
    r.report.set("in.order", order);
    r.report.set("in.lambda", action.lambda);
    r.report.set("in.cutoff", to_string(action.cutoff.kind));
    const auto coeffs = perturbative_expansion(s.src.triple, state, action, int(order));
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        r.report.set("coeff_" + std::to_string(j), coeffs[j]);
    return r;
}

RunResult do_verify_identity(Scenario& s) {
    RunResult r;
    stamp(r.report, "verify-identity");
    const FermionState state = resolve_state(s.cfg, s.src, /*required=*/true);
    if (state.is_zero())
        throw ValidationError("verify-identity: state.psi must be nonzero");
    const CrossTermReport ct = cross_term_quadratic(s.src.triple, state);
    r.report.set("in.dim", std::int64_t(s.src.triple.d.rows()));
    r.report.set("lhs", ct.lhs);
    r.report.set("paper_rhs", ct.paper_rhs);
    r.report.set("derived_rhs", ct.derived_rhs);
    r.report.set("lhs_minus_paper_rhs", ct.lhs_minus_paper);
    r.report.set("lhs_minus_derived_rhs", ct.lhs_minus_derived);
    r.report.set("in.tol", s.tol);
    const bool pass = std::abs(ct.lhs_minus_derived) <= s.tol;
    r.report.set("pass", pass);
    r.exit_code = pass ? kExitOk : kExitCheckFailed;
    return r;
}

RunResult do_gauge_invariance(Scenario& s) {
    RunResult r;
    stamp(r.report, "gauge-invariance");
    const std::int64_t samples = option_int(s.cfg, "samples", 1000);
    if (samples <= 0) throw ValidationError("options.samples: must be positive");
    RandomStream rng(s.seed);
    double worst_drift = 0.0, worst_intertwine = 0.0;
    for (std::int64_t k = 0; k < samples; ++k) {
        const GaugeElement g = sample_su2(rng);
        const LeptonDoublet l{rng.complex_normal(), rng.complex_normal()};
        const HiggsDoublet h{rng.complex_normal(), rng.complex_normal()};
        const Complex before = invariant_term(h, l);
        const auto [lt, ht] = gauge_transform(l, h, g);
        const Complex after = invariant_term(ht, lt);
        worst_drift = std::max(worst_drift, std::abs(std::abs(after) - std::abs(before)));
        worst_intertwine = std::max(worst_intertwine, check_intertwine(g.h));
    }
    r.report.set("in.samples", samples);
    r.report.set("in.seed", std::int64_t(s.seed));
    r.report.set("in.tol", s.tol);
    r.report.set("max_invariant_drift", worst_drift);
    r.report.set("max_intertwine_residual", worst_intertwine);
    const bool pass = worst_drift <= s.tol && worst_intertwine <= s.tol;
    r.report.set("pass", pass);
    r.exit_code = pass ? kExitOk : kExitCheckFailed;
    return r;
}

RunResult do_mass_estimate(Scenario& s) {
    RunResult r;
    stamp(r.report, "mass-estimate");
    const LeptonModelParams p = resolve_params(s.cfg);
    try {
        validate(p);
    } catch (const InvalidParams& e) {
        throw ValidationError(e.what());
    }
    r.report.set("in.kappa", p.kappa);
    r.report.set("in.v_gev", p.v_gev);
    r.report.set("in.lambda_gev", p.lambda_gev);
    const double ev = neutrino_mass_estimate(p.kappa, p.v_gev, p.lambda_gev);
    r.report.set("mass_ev", ev);
    r.report.set("mass_gev", ev * 1e-9);
    return r;
}

RunResult do_weyl_scan(Scenario& s, const WeylArgs& w) {
    RunResult r;
    stamp(r.report, "weyl-scan");
    if (!s.cfg.contains("spectrum"))
        throw ConfigParseError("config: missing section 'spectrum'");
    const json& spec = s.cfg["spectrum"];
    std::vector<double> values;
    if (spec.contains("circle")) {
        const json& c = spec["circle"];
        const std::int64_t n_min = ioconf::integer(ioconf::require_key(c, "n_min", "spectrum.circle"),
                                                   "spectrum.circle.n_min");
        const std::int64_t n_max = ioconf::integer(ioconf::require_key(c, "n_max", "spectrum.circle"),
                                                   "spectrum.circle.n_max");
        if (n_min > n_max) throw ValidationError("spectrum.circle: n_min must be <= n_max");
        values = circle_spectrum(n_min, n_max);
    } else if (spec.contains("values")) {
        const json& v = spec["values"];
        if (!v.is_array()) throw ConfigParseError("spectrum.values: expected an array of numbers");
        for (std::size_t i = 0; i < v.size(); ++i)
            values.push_back(ioconf::number(v[i], "spectrum.values[" + std::to_string(i) + "]"));
    } else {
        throw ConfigParseError("spectrum: expected 'circle' or 'values'");
    }
    if (!(w.lambda_min > 0.0) || !(w.lambda_max >= w.lambda_min) || w.steps < 1)
        throw ValidationError("weyl-scan: need 0 < lambda-min <= lambda-max and steps >= 1");

    r.report.set("in.lambda_min", w.lambda_min);
    r.report.set("in.lambda_max", w.lambda_max);
    r.report.set("in.steps", w.steps);
    r.report.set("in.spectrum_size", std::int64_t(values.size()));

    ReportTable table;
    table.columns = {"lambda", "count"};
    for (std::int64_t i = 0; i < w.steps; ++i) {
        const double lambda =
            w.steps == 1 ? w.lambda_min
                         : w.lambda_min + (w.lambda_max - w.lambda_min) * double(i) / double(w.steps - 1);
        table.rows.push_back(
            {ReportValue{lambda}, ReportValue{weyl_count(values, lambda)}});
    }
    r.report.set_table(table);
    return r;
}

int dispatch(const std::string& command, const CommonArgs& args, const WeylArgs& weyl) {
    json cfg;
    Scenario s;
    try {
        cfg = load_json_file(args.config_path);
        if (!cfg.is_object()) throw ConfigParseError("config root must be a JSON object");
        for (const auto& o : args.overrides) apply_override(cfg, o);
        s.cfg = cfg;
        s.tol = resolve_tolerance(cfg);
        s.seed = args.seed;
        s.format = parse_output_format(args.format);
    } catch (const ConfigParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigParse;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    }

    const auto started = std::chrono::steady_clock::now();
    RunResult result;
    try {
        const bool needs_triple =
            command != "gauge-invariance" && command != "mass-estimate" && command != "weyl-scan";
        if (needs_triple) s.src = resolve_triple(s.cfg);

        if (command == "check-axioms") result = do_check_axioms(s);
        else if (command == "bosonic-action") result = do_bosonic(s);
        else if (command == "fermionic-action") result = do_fermionic(s);
        else if (command == "extended-action") result = do_extended(s);
        else if (command == "expand") result = do_expand(s);
        else if (command == "verify-identity") result = do_verify_identity(s);
        else if (command == "gauge-invariance") result = do_gauge_invariance(s);
        else if (command == "mass-estimate") result = do_mass_estimate(s);
        else result = do_weyl_scan(s, weyl);
    } catch (const ConfigParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigParse;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return kExitCompute;
    } catch (const std::exception& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return kExitCompute;
    }

    const auto elapsed = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    result.report.set_duration_ms(elapsed);
    std::cout << result.report.emit(s.format);
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral-lab: numerical laboratory for finite spectral triples"};
    app.set_version_flag("--version", std::string("spectral-lab ") + kVersion);
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"check-axioms", "verify the spectral-triple axioms and report residuals"},
        {"bosonic-action", "evaluate Tr f(D^2/Lambda^2)"},
        {"fermionic-action", "evaluate <psi|D psi>"},
        {"extended-action", "evaluate Tr f((D+P_psi)^2/Lambda^2)"},
        {"expand", "Taylor coefficients of the extended action in the state projector"},
        {"verify-identity", "audit the quadratic cross-term identity"},
        {"gauge-invariance", "sample SU(2)xU(1) and check the invariant pairing"},
        {"mass-estimate", "neutrino mass estimate kappa v^2 / Lambda"},
        {"weyl-scan", "eigenvalue counting table over a Lambda range"},
    };

    std::map<std::string, CommonArgs> args;
    WeylArgs weyl;
    for (const auto& [name, desc] : commands) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        attach_common(cmd, args[name]);
        if (name == "weyl-scan") {
            cmd->add_option("--lambda-min", weyl.lambda_min, "smallest cutoff scale");
            cmd->add_option("--lambda-max", weyl.lambda_max, "largest cutoff scale");
            cmd->add_option("--steps", weyl.steps, "number of grid points");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigParse;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    return dispatch(command, args[command], weyl);
}
