// Command line front end: sampling, construction pipelines, certificate
// verification, Monte Carlo experiments and threshold scans.
//
// Exit codes: 0 success, 1 negative result (no cycle found / certificate
// invalid), 2 usage, config or IO error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hamperturb/clfactor.hpp"
#include "hamperturb/experiments.hpp"
#include "hamperturb/io.hpp"
#include "hamperturb/mindeg.hpp"
#include "hamperturb/oracle.hpp"
#include "hamperturb/posa.hpp"
#include "hamperturb/regular.hpp"

namespace hp = hamperturb;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::string out_path;      // empty: stdout
    std::string format = "json";
    int workers = 0;           // 0: resolve from HAMPERTURB_WORKERS, else 1
};

int resolve_workers(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("HAMPERTURB_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

std::uint64_t fresh_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.out_path.empty())
        std::cout << text;
    else
        hp::write_text_file(g.out_path, text);
}

// ---- graph sources -----------------------------------------------------

struct GraphSpec {
    std::string file;
    std::string family;
    int n = 0;
    int d = 0;
    double eps = 0.25;
    double p = 0.5;
};

std::string graph_fragment(const GraphSpec& s) {
    if (!s.file.empty()) return "file:" + s.file;
    std::ostringstream o;
    o << "family:" << s.family << ",n=" << s.n << ",d=" << s.d
      << ",eps=" << hp::format_double(s.eps) << ",p=" << hp::format_double(s.p);
    return o.str();
}

hp::Graph build_graph(const GraphSpec& s, hp::Rng& rng) {
    if (!s.file.empty()) {
        std::ifstream in(s.file);
        if (!in) throw hp::ConfigError("cannot open graph file: " + s.file);
        return hp::read_edge_list(in);
    }
    if (s.family.empty()) throw hp::ConfigError("need --graph FILE or --family NAME");
    if (s.n < 3) throw hp::ConfigError("graph family needs --n >= 3");
    if (s.family == "complete") return hp::complete_graph(s.n);
    if (s.family == "cycle") return hp::cycle_graph(s.n);
    if (s.family == "gnp") return hp::gnp_graph(s.n, s.p, rng);
    if (s.family == "near_regular") {
        if (s.d < 3) throw hp::ConfigError("family near_regular needs --d >= 3");
        return hp::near_regular_graph(s.n, s.d, rng);
    }
    if (s.family == "clique_blowup") {
        if (s.d < 3) throw hp::ConfigError("family clique_blowup needs --d >= 3");
        return hp::clique_blowup(s.n, s.d);
    }
    if (s.family == "lower_bound") {
        hp::CompleteBipartite cb = hp::lower_bound_graph(s.n, s.eps);
        long long edges = static_cast<long long>(cb.a_size()) * (s.n - cb.a_size());
        if (edges > 50000000)
            throw hp::ConfigError("lower_bound host too large to materialize; lower --n");
        return cb.materialize();
    }
    throw hp::ConfigError("unknown graph family: " + s.family);
}

// Runs fn on the implicit bipartite host when that avoids materializing it,
// otherwise on a concrete edge list.
template <class Fn>
int with_host(const GraphSpec& s, hp::Rng& rng, Fn&& fn) {
    if (s.file.empty() && s.family == "lower_bound") {
        if (s.n < 3) throw hp::ConfigError("graph family needs --n >= 3");
        hp::CompleteBipartite host = hp::lower_bound_graph(s.n, s.eps);
        return fn(host);
    }
    hp::Graph host = build_graph(s, rng);
    return fn(host);
}

GraphSpec graph_spec_from_json(const nlohmann::json& j) {
    hp::reject_unknown_keys(j, {"file", "family", "n", "d", "eps", "p"}, "graph");
    GraphSpec s;
    if (j.contains("file")) s.file = j.at("file").get<std::string>();
    if (j.contains("family")) s.family = j.at("family").get<std::string>();
    if (j.contains("n")) s.n = j.at("n").get<int>();
    if (j.contains("d")) s.d = j.at("d").get<int>();
    if (j.contains("eps")) s.eps = j.at("eps").get<double>();
    if (j.contains("p")) s.p = j.at("p").get<double>();
    return s;
}

std::string params_fragment(const hp::ConstructParams& p) {
    std::ostringstream o;
    o << "L=" << (p.L_override ? std::to_string(*p.L_override) : "auto")
      << ";run_len=" << (p.run_len ? std::to_string(*p.run_len) : "auto")
      << ";retries=" << p.retries
      << ";cap=" << (p.exposure_cap ? std::to_string(*p.exposure_cap) : "auto")
      << ";fallback=" << (p.fallback ? 1 : 0) << ";fb_budget=" << p.fallback_budget
      << ";re_runs=" << p.re_runs
      << ";a=" << (p.a_size ? std::to_string(*p.a_size) : "auto")
      << ";alpha=" << hp::format_double(p.alpha)
      << ";ell=" << (p.ell ? std::to_string(*p.ell) : "auto");
    return o.str();
}

// ---- sample ------------------------------------------------------------

struct SampleCli {
    std::string what = "two_factor";
    int n = 0;
    int ell = 0;
    std::string factor_out;
    GraphSpec gspec;
};

int run_sample(const SampleCli& c, const GlobalOpts& g) {
    hp::Rng rng(hp::derive_stream(g.seed, 0x73616d70ull));
    if (c.what == "graph") {
        hp::Graph gr = build_graph(c.gspec, rng);
        std::ostringstream o;
        o << "# hamperturb graph seed=" << g.seed << " " << graph_fragment(c.gspec) << "\n";
        hp::write_edge_list(o, gr);
        emit(g, o.str());
        return 0;
    }
    if (c.n < 1) throw hp::ConfigError("sample needs --n");
    std::string cfg = "cmd=sample;what=" + c.what + ";n=" + std::to_string(c.n) +
                      ";ell=" + std::to_string(c.ell);
    std::string payload;
    if (c.what == "permutation") {
        hp::Permutation pi = hp::sample_uniform(c.n, rng);
        payload = "{\"images\":" + hp::json_ints(pi.images()) + "}";
    } else {
        hp::TwoFactor f = c.what == "cl_factor" ? hp::sample_cl_factor(c.n, c.ell, rng)
                                                : hp::sample_two_factor(c.n, rng);
        if (!c.factor_out.empty()) {
            std::ostringstream fo;
            hp::write_factor(fo, f);
            hp::write_text_file(c.factor_out, fo.str());
        }
        payload = hp::factor_json(f);
    }
    emit(g, hp::json_envelope("sample." + c.what, g.seed, cfg, payload));
    return 0;
}

// ---- construct ---------------------------------------------------------

struct ConstructCli {
    std::string pipeline = "mindeg";
    GraphSpec gspec;
    std::string factor_file;
    std::string cert_out;
    bool emit_factor = false;
    long long budget = 1000000; // rotation-extension step budget (posa)
    hp::ConstructParams params;
};

int run_construct(const ConstructCli& c, const GlobalOpts& g) {
    hp::Rng graph_rng(hp::derive_stream(g.seed, 0x67726170ull));
    hp::Rng rng(hp::derive_stream(g.seed, 0x72756e00ull));

    return with_host(c.gspec, graph_rng, [&](const auto& host) -> int {
        const int n = host.size();

        std::optional<hp::TwoFactor> given;
        std::string factor_src = "sampled";
        if (!c.factor_file.empty()) {
            std::ifstream in(c.factor_file);
            if (!in) throw hp::ConfigError("cannot open factor file: " + c.factor_file);
            given = hp::read_factor(in);
            if (given->size() != n)
                throw hp::ConfigError("factor covers " + std::to_string(given->size()) +
                                      " vertices but the graph has " + std::to_string(n));
            factor_src = "file:" + c.factor_file;
        }

        std::string cfg = "cmd=construct;pipeline=" + c.pipeline +
                          ";graph=" + graph_fragment(c.gspec) + ";factor=" + factor_src + ";" +
                          params_fragment(c.params);

        bool ok = false;
        std::string stage = "none";
        std::string payload;
        std::optional<hp::Certificate> cert;
        const bool big = n > 10000 && !c.emit_factor;

        if (c.pipeline == "mindeg") {
            if (given) throw hp::ConfigError("pipeline mindeg samples its own factor; "
                                             "use mindeg_fixed to supply one");
            hp::MinDegOutcome out = hp::construct_hamilton_min_degree(host, rng, c.params);
            ok = out.ok();
            if (out.failure) stage = out.failure->stage;
            cert = out.certificate;
            payload = hp::mindeg_outcome_json(out, !big);
        } else if (c.pipeline == "mindeg_fixed") {
            hp::TwoFactor f = given ? *given : hp::sample_two_factor(n, rng);
            hp::MinDegOutcome out = hp::construct_hamilton_min_degree_fixed(host, f, rng, c.params);
            ok = out.ok();
            if (out.failure) stage = out.failure->stage;
            cert = out.certificate;
            payload = hp::mindeg_outcome_json(out, !big);
        } else if (c.pipeline == "regular") {
            hp::TwoFactor f = given ? *given : hp::sample_two_factor(n, rng);
            hp::RegularOutcome out = hp::construct_hamilton_regular(host, f, rng, c.params);
            ok = out.ok();
            if (out.failure) stage = out.failure->stage;
            cert = out.certificate;
            payload = hp::regular_outcome_json(out);
        } else if (c.pipeline == "clfactor") {
            hp::TwoFactor f = [&] {
                if (given) return *given;
                if (!c.params.ell) throw hp::ConfigError("pipeline clfactor needs --ell "
                                                         "when no factor file is given");
                return hp::sample_cl_factor(n, *c.params.ell, rng);
            }();
            hp::ClFactorOutcome out = hp::concatenate_cycle_factor(host, f, rng, c.params);
            ok = out.ok();
            if (out.failure) stage = out.failure->stage;
            cert = out.certificate;
            payload = hp::clfactor_outcome_json(out);
        } else if (c.pipeline == "posa") {
            hp::Graph h = hp::detail::materialize_host(host);
            if (given) h = hp::union_graph(h, hp::two_factor_graph(*given));
            hp::PosaOutcome out = hp::posa_fallback(h, rng, c.budget);
            ok = out.ok();
            if (out.failure) stage = out.failure->stage;
            cert = out.certificate;
            payload = hp::posa_outcome_json(out);
        } else {
            throw hp::ConfigError("unknown pipeline: " + c.pipeline);
        }

        if (!c.cert_out.empty() && cert) {
            std::ostringstream co;
            hp::write_certificate(co, *cert);
            hp::write_text_file(c.cert_out, co.str());
        }

        std::cout << (ok ? "HAMILTONIAN\n" : "NOT FOUND: " + stage + "\n");
        emit(g, hp::json_envelope("construct." + c.pipeline, g.seed, cfg, payload));
        return ok ? 0 : 1;
    });
}

// ---- verify ------------------------------------------------------------

struct VerifyCli {
    GraphSpec gspec;
    std::string cert_file;
    std::string factor_file;
    bool exact = false;
};

int run_verify(const VerifyCli& c, const GlobalOpts& g) {
    hp::Rng rng(hp::derive_stream(g.seed, 0x67726170ull));
    hp::Graph h = build_graph(c.gspec, rng);
    std::string cfg = "cmd=verify;graph=" + graph_fragment(c.gspec);
    if (!c.factor_file.empty()) {
        std::ifstream in(c.factor_file);
        if (!in) throw hp::ConfigError("cannot open factor file: " + c.factor_file);
        h = hp::union_graph(h, hp::two_factor_graph(hp::read_factor(in)));
        cfg += ";factor=file:" + c.factor_file;
    }

    if (c.exact) {
        hp::OracleVerdict v = hp::is_hamiltonian_exact(h);
        std::cout << (v.hamiltonian ? "HAMILTONIAN\n" : "NOT HAMILTONIAN\n");
        std::string payload = std::string("{\"hamiltonian\":") +
                              (v.hamiltonian ? "true" : "false");
        if (v.certificate) payload += ",\"certificate\":" + hp::certificate_json(*v.certificate);
        payload += "}";
        emit(g, hp::json_envelope("verify.exact", g.seed, cfg + ";exact=1", payload));
        return v.hamiltonian ? 0 : 1;
    }

    if (c.cert_file.empty()) throw hp::ConfigError("verify needs --certificate FILE (or --exact)");
    std::ifstream in(c.cert_file);
    if (!in) throw hp::ConfigError("cannot open certificate file: " + c.cert_file);
    hp::Certificate cert = hp::read_certificate(in);
    std::string why;
    bool valid = hp::verify_certificate(h, cert, &why);
    std::cout << (valid ? "VALID\n" : "INVALID: " + why + "\n");
    std::string payload = std::string("{\"valid\":") + (valid ? "true" : "false") +
                          ",\"reason\":" + hp::json_str(why) + "}";
    emit(g, hp::json_envelope("verify", g.seed, cfg + ";certificate=file:" + c.cert_file, payload));
    return valid ? 0 : 1;
}

// ---- experiment / scan -------------------------------------------------

struct ExperimentCli {
    std::string config_file;
    std::string experiment;
    std::string model;
    std::string family;
    std::string graph_file;
    int n = -1;
    long long trials = -1;
    int t = -2;
    double eps = -1.0;
    double gamma = -1.0;
    int r_size = -1;
    int s_size = -1;
    int t_size = -1;
    int a_size = -1;
    std::vector<double> grid;
};

nlohmann::json load_config_json(const std::string& path) {
    if (path.empty()) return nlohmann::json::object();
    try {
        return nlohmann::json::parse(hp::read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw hp::ConfigError("config " + path + ": " + e.what());
    }
}

// Explicit flags override the config file; the merged object still passes
// unknown-key rejection.
nlohmann::json merged_config(const ExperimentCli& e) {
    nlohmann::json j = load_config_json(e.config_file);
    if (!e.experiment.empty()) j["experiment"] = e.experiment;
    if (!e.model.empty()) j["model"] = e.model;
    if (!e.family.empty()) j["family"] = e.family;
    if (e.n >= 0) j["n"] = e.n;
    if (e.trials >= 0) j["trials"] = e.trials;
    if (e.t >= -1) j["t"] = e.t;
    if (e.eps >= 0.0) j["eps"] = e.eps;
    if (e.gamma >= 0.0) j["gamma"] = e.gamma;
    if (e.r_size >= 0) j["r_size"] = e.r_size;
    if (e.s_size >= 0) j["s_size"] = e.s_size;
    if (e.t_size >= 0) j["t_size"] = e.t_size;
    if (e.a_size >= 0) j["a_size"] = e.a_size;
    if (!e.grid.empty()) j["grid"] = e.grid;
    if (!e.graph_file.empty()) j["graph"] = {{"file", e.graph_file}};
    return j;
}

std::string meta_comment(const std::string& kind, std::uint64_t seed, const std::string& cfg) {
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(hp::fnv1a(cfg)));
    std::ostringstream o;
    o << "# tool_version=" << hp::tool_version << " kind=" << kind << " seed=" << seed
      << " config_hash=" << hash << "\n";
    return o.str();
}

int run_experiment(const ExperimentCli& e, const GlobalOpts& g) {
    nlohmann::json j = merged_config(e);
    hp::ExperimentConfig cfg = hp::parse_experiment_config(j);
    cfg.seed = g.seed;
    cfg.workers = resolve_workers(g.workers);
    if (cfg.experiment.empty()) throw hp::ConfigError("experiment name is required");

    std::string cfg_str = hp::canonical_config_string(cfg);
    hp::Summary s;
    if (cfg.experiment == "cycle_stats") {
        s = hp::mc_cycle_stats(cfg);
    } else if (cfg.experiment == "hitpairs") {
        s = hp::mc_hitpairs(cfg);
    } else if (cfg.experiment == "lower_bound") {
        s = hp::mc_lower_bound(cfg);
    } else if (cfg.experiment == "induced_mindegree" || cfg.experiment == "expansion") {
        if (!j.contains("graph"))
            throw hp::ConfigError("experiment " + cfg.experiment + " needs a graph spec");
        GraphSpec gs = graph_spec_from_json(j.at("graph"));
        hp::Rng graph_rng(hp::derive_stream(g.seed, 0x67726170ull));
        hp::Graph host = build_graph(gs, graph_rng);
        cfg_str += ";graph=" + graph_fragment(gs);
        s = cfg.experiment == "induced_mindegree" ? hp::mc_induced_mindegree(host, cfg)
                                                  : hp::mc_expansion(host, cfg);
    } else {
        throw hp::ConfigError("unknown experiment: " + cfg.experiment);
    }

    if (g.format == "csv")
        emit(g, meta_comment("experiment", g.seed, cfg_str) + hp::summary_csv({s}));
    else
        emit(g, hp::json_envelope("experiment." + cfg.experiment, g.seed, cfg_str,
                                  hp::summary_json(s)));
    return 0;
}

int run_scan(const ExperimentCli& e, const GlobalOpts& g) {
    nlohmann::json j = merged_config(e);
    hp::ExperimentConfig cfg = hp::parse_experiment_config(j);
    cfg.seed = g.seed;
    cfg.workers = resolve_workers(g.workers);

    std::string cfg_str = "cmd=scan;" + hp::canonical_config_string(cfg);
    std::vector<hp::Summary> table = hp::threshold_scan(cfg);
    if (g.format == "csv")
        emit(g, meta_comment("scan", g.seed, cfg_str) + hp::summary_csv(table));
    else
        emit(g, hp::json_envelope("scan." + cfg.family, g.seed, cfg_str,
                                  hp::summaries_json(table)));
    return 0;
}

// --n is deliberately not added here; each subcommand binds its own.
void add_graph_flags(CLI::App* sub, GraphSpec& s) {
    sub->add_option("--graph", s.file, "edge list file (header 'n m' or bare pairs)");
    sub->add_option("--family", s.family, "built-in family")
        ->check(CLI::IsMember({"complete", "cycle", "gnp", "near_regular", "clique_blowup",
                               "lower_bound"}));
    sub->add_option("--d", s.d, "degree parameter (near_regular, clique_blowup)");
    sub->add_option("--eps", s.eps, "eps parameter (lower_bound)");
    sub->add_option("--p", s.p, "edge probability (gnp)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hamperturb: Hamilton cycles in dense graphs perturbed by a random 2-factor"};
    app.require_subcommand(1);

    GlobalOpts go;
    auto* seed_opt = app.add_option("--seed", go.seed, "master seed (default: random, echoed)");
    app.add_option("--out", go.out_path, "write the main output to FILE instead of stdout");
    app.add_option("--format", go.format, "table format for experiment/scan")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--workers", go.workers,
                   "worker threads (default: HAMPERTURB_WORKERS or 1); never changes results");

    SampleCli sc;
    auto* sample = app.add_subcommand("sample", "draw permutations, 2-factors or graphs");
    sample->fallthrough();
    sample->add_option("--what", sc.what, "object to sample")
        ->check(CLI::IsMember({"permutation", "two_factor", "cl_factor", "graph"}));
    sample->add_option("--n", sc.n, "size");
    sample->add_option("--ell", sc.ell, "cycle length for cl_factor");
    sample->add_option("--factor-out", sc.factor_out, "also write the factor as text to FILE");
    add_graph_flags(sample, sc.gspec);
    sample->final_callback([&] { sc.gspec.n = sc.n; });

    ConstructCli cc;
    auto* construct = app.add_subcommand("construct", "run a cycle construction pipeline");
    construct->fallthrough();
    construct->add_option("--pipeline", cc.pipeline, "construction pipeline")
        ->check(CLI::IsMember({"mindeg", "mindeg_fixed", "regular", "clfactor", "posa"}));
    construct->add_option("--n", cc.gspec.n, "vertex count for --family");
    add_graph_flags(construct, cc.gspec);
    construct->add_option("--factor", cc.factor_file, "2-factor file (one cycle per line)");
    construct->add_option("--cert", cc.cert_out, "write the certificate as text to FILE");
    construct->add_flag("--emit-factor", cc.emit_factor,
                        "embed the factor in JSON output even for n > 10000");
    construct->add_option("--budget", cc.budget, "rotation step budget (posa)");
    int cap_flag = -1, l_flag = -1, run_len_flag = -1, a_flag = -1, ell_flag = -1;
    construct->add_option("--L", l_flag, "long cycle threshold override");
    construct->add_option("--run-len", run_len_flag, "exposure run length override");
    construct->add_option("--retries", cc.params.retries, "windows tried per long cycle");
    construct->add_option("--cap", cap_flag, "exposure cap override");
    construct->add_flag("--fallback", cc.params.fallback,
                        "rotation-extension rescue after mindeg_fixed failure");
    construct->add_option("--fallback-budget", cc.params.fallback_budget,
                          "rotation step budget for --fallback");
    construct->add_option("--re-runs", cc.params.re_runs, "schedule retries (mindeg_fixed)");
    construct->add_option("--a-size", a_flag, "bipartite part size for witness checks");
    construct->add_option("--alpha", cc.params.alpha, "density parameter (clfactor, regular)");
    construct->add_option("--ell", ell_flag, "cycle length (clfactor sampling)");

    VerifyCli vc;
    auto* verify = app.add_subcommand("verify", "check a certificate, or decide exactly");
    verify->fallthrough();
    verify->add_option("--n", vc.gspec.n, "vertex count for --family");
    add_graph_flags(verify, vc.gspec);
    verify->add_option("--certificate", vc.cert_file, "certificate file (vertex order)");
    verify->add_option("--factor", vc.factor_file, "union a 2-factor into the host first");
    verify->add_flag("--exact", vc.exact, "exact decision for n <= 20 instead");

    ExperimentCli ec;
    auto* experiment = app.add_subcommand("experiment", "Monte Carlo statistics");
    experiment->fallthrough();
    experiment->add_option("--config", ec.config_file, "JSON config file");
    experiment->add_option("--experiment", ec.experiment, "experiment name")
        ->check(CLI::IsMember({"cycle_stats", "hitpairs", "induced_mindegree", "expansion",
                               "lower_bound"}));
    experiment->add_option("--n", ec.n, "size");
    experiment->add_option("--trials", ec.trials, "trial count");
    experiment->add_option("--model", ec.model, "permutation model")
        ->check(CLI::IsMember({"s_n", "g_n_2"}));
    experiment->add_option("--t", ec.t, "cycle length threshold (-1: n)");
    experiment->add_option("--eps", ec.eps, "eps parameter");
    experiment->add_option("--gamma", ec.gamma, "gamma parameter");
    experiment->add_option("--r", ec.r_size, "position block size");
    experiment->add_option("--s", ec.s_size, "first value block size");
    experiment->add_option("--tz", ec.t_size, "second value block size");
    experiment->add_option("--a-size", ec.a_size, "small side size override");
    experiment->add_option("--graph-file", ec.graph_file, "edge list for graph experiments");

    ExperimentCli scn;
    auto* scan = app.add_subcommand("scan", "success-rate scan over a parameter grid");
    scan->fallthrough();
    scan->add_option("--config", scn.config_file, "JSON config file");
    scan->add_option("--family", scn.family, "graph family per grid point")
        ->check(CLI::IsMember({"complete", "clique_blowup", "near_regular", "lower_bound"}));
    scan->add_option("--n", scn.n, "size");
    scan->add_option("--trials", scn.trials, "trials per grid point");
    scan->add_option("--grid", scn.grid, "grid of family parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!*seed_opt) go.seed = fresh_seed();

    try {
        if (sample->parsed()) return run_sample(sc, go);
        if (construct->parsed()) {
            if (l_flag >= 0) cc.params.L_override = l_flag;
            if (run_len_flag >= 0) cc.params.run_len = run_len_flag;
            if (cap_flag >= 0) cc.params.exposure_cap = cap_flag;
            if (a_flag >= 0) cc.params.a_size = a_flag;
            if (ell_flag >= 0) cc.params.ell = ell_flag;
            return run_construct(cc, go);
        }
        if (verify->parsed()) return run_verify(vc, go);
        if (experiment->parsed()) return run_experiment(ec, go);
        if (scan->parsed()) return run_scan(scn, go);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error&) {
        throw; // invariant violation: crash loudly
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
