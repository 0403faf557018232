#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "core.hpp"
#include "experiments.hpp"
#include "graph.hpp"
#include "permutation.hpp"
#include "result.hpp"

namespace hamperturb {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

inline std::string json_str(const std::string& s) { return "\"" + json_escape(s) + "\""; }

inline std::string json_ints(const std::vector<int>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

// ---- text formats ------------------------------------------------------

/// Edge lists: "u v" per line, '#' comments. A leading "n m" header is
/// recognized when the remaining line count equals m and every endpoint is
/// below n; otherwise the first line is an edge too and n is one past the
/// largest endpoint.
inline Graph read_edge_list(std::istream& in) {
    std::vector<std::pair<long long, long long>> rows;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        long long a, b;
        if (ls >> a >> b) rows.emplace_back(a, b);
        else {
            std::string junk;
            if (std::istringstream(line) >> junk)
                throw std::invalid_argument("edge list: unparsable line: " + line);
        }
    }
    if (rows.empty()) throw std::invalid_argument("edge list: no data");
    bool header = false;
    if (rows.front().first >= 1 && rows.front().second >= 0 &&
        static_cast<long long>(rows.size()) - 1 == rows.front().second) {
        header = true;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].first >= rows.front().first || rows[i].second >= rows.front().first ||
                rows[i].first < 0 || rows[i].second < 0)
                header = false;
    }
    std::size_t at = header ? 1 : 0;
    long long n = header ? rows.front().first : 0;
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = at; i < rows.size(); ++i) {
        auto [u, v] = rows[i];
        if (u < 0 || v < 0) throw std::invalid_argument("edge list: negative endpoint");
        if (!header) n = std::max(n, std::max(u, v) + 1);
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    if (n < 1 || n > 50000000) throw std::invalid_argument("edge list: bad vertex count");
    return Graph::from_edges(static_cast<int>(n), edges);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.size() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

/// Factors: one cycle per line, '#' comments.
inline TwoFactor read_factor(std::istream& in) {
    std::vector<std::vector<int>> cycles;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<int> cyc;
        int v;
        while (ls >> v) cyc.push_back(v);
        if (!cyc.empty()) cycles.push_back(std::move(cyc));
    }
    if (cycles.empty()) throw std::invalid_argument("factor: no cycles");
    int n = 0;
    for (const auto& c : cycles) n += static_cast<int>(c.size());
    return TwoFactor(n, std::move(cycles));
}

inline void write_factor(std::ostream& out, const TwoFactor& f) {
    for (const auto& c : f.cycles()) {
        for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
        out << "\n";
    }
}

/// Certificates: whitespace-separated vertex order, '#' comments.
inline Certificate read_certificate(std::istream& in) {
    Certificate c;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        int v;
        while (ls >> v) c.order.push_back(v);
    }
    if (c.order.empty()) throw std::invalid_argument("certificate: empty");
    return c;
}

inline void write_certificate(std::ostream& out, const Certificate& c) {
    for (std::size_t i = 0; i < c.order.size(); ++i) out << (i ? " " : "") << c.order[i];
    out << "\n";
}

// ---- JSON payloads -----------------------------------------------------

inline std::string summary_json(const Summary& s) {
    std::ostringstream o;
    o << "{\"name\":" << json_str(s.name) << ",\"n\":" << s.n << ",\"trials\":" << s.trials
      << ",\"param\":" << format_double(s.param) << ",\"stats\":{";
    for (std::size_t i = 0; i < s.stats.size(); ++i) {
        const auto& e = s.stats[i];
        if (i) o << ",";
        o << json_str(e.name) << ":{\"count\":" << e.count << ",\"mean\":" << format_double(e.mean)
          << ",\"variance\":" << format_double(e.variance)
          << ",\"radius3\":" << format_double(e.radius3) << "}";
    }
    o << "},\"freqs\":{";
    for (std::size_t i = 0; i < s.freqs.size(); ++i) {
        const auto& e = s.freqs[i];
        if (i) o << ",";
        o << json_str(e.name) << ":{\"hits\":" << e.hits << ",\"trials\":" << e.trials
          << ",\"freq\":" << format_double(e.freq) << ",\"ci_lo\":" << format_double(e.ci.lo)
          << ",\"ci_hi\":" << format_double(e.ci.hi) << "}";
    }
    o << "},\"notes\":{";
    for (std::size_t i = 0; i < s.notes.size(); ++i) {
        if (i) o << ",";
        o << json_str(s.notes[i].first) << ":" << format_double(s.notes[i].second);
    }
    o << "},\"tallies\":{";
    for (std::size_t i = 0; i < s.tallies.size(); ++i) {
        if (i) o << ",";
        o << json_str(s.tallies[i].first) << ":" << s.tallies[i].second;
    }
    o << "}}";
    return o.str();
}

inline std::string summaries_json(const std::vector<Summary>& table) {
    std::string out = "[";
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (i) out += ",";
        out += summary_json(table[i]);
    }
    return out + "]";
}

inline std::string summary_csv(const std::vector<Summary>& table) {
    std::ostringstream o;
    o << "row,point,name,field,a,b,c,d,e\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& s = table[i];
        o << "summary," << i << "," << s.name << ",meta," << s.n << "," << s.trials << ","
          << format_double(s.param) << ",,\n";
        for (const auto& e : s.stats)
            o << "stat," << i << "," << s.name << "," << e.name << "," << e.count << ","
              << format_double(e.mean) << "," << format_double(e.variance) << ","
              << format_double(e.radius3) << ",\n";
        for (const auto& e : s.freqs)
            o << "freq," << i << "," << s.name << "," << e.name << "," << e.hits << "," << e.trials
              << "," << format_double(e.freq) << "," << format_double(e.ci.lo) << ","
              << format_double(e.ci.hi) << "\n";
        for (const auto& e : s.notes)
            o << "note," << i << "," << s.name << "," << e.first << "," << format_double(e.second)
              << ",,,,\n";
        for (const auto& e : s.tallies)
            o << "tally," << i << "," << s.name << "," << e.first << "," << e.second << ",,,,\n";
    }
    return o.str();
}

inline std::string failure_json(const Failure& f) {
    return "{\"stage\":" + json_str(f.stage) + ",\"detail\":" + json_str(f.detail) +
           ",\"exposure_count\":" + std::to_string(f.exposure_count) + "}";
}

inline std::string certificate_json(const Certificate& c) {
    return "{\"order\":" + json_ints(c.order) + "}";
}

inline std::string factor_json(const TwoFactor& f) {
    std::string out = "[";
    for (std::size_t i = 0; i < f.cycles().size(); ++i) {
        if (i) out += ",";
        out += json_ints(f.cycles()[i]);
    }
    return out + "]";
}

inline std::string mindeg_report_json(const MinDegReport& r) {
    long long first_total = static_cast<long long>(r.first_order_outcomes.size());
    long long first_succ = 0;
    for (auto b : r.first_order_outcomes) first_succ += b;
    std::ostringstream o;
    o << "{\"n\":" << r.n << ",\"cycle_count\":" << r.cycle_count
      << ",\"long_treated\":" << r.long_treated << ",\"short_count\":" << r.short_count
      << ",\"exposure_count\":" << r.exposure_count << ",\"exposure_cap\":" << r.exposure_cap
      << ",\"cap_ok\":" << (r.cap_ok ? "true" : "false")
      << ",\"raw_good_counts\":" << json_ints(r.raw_good_counts)
      << ",\"table_sizes\":" << json_ints(r.table_sizes) << ",\"supplemented\":" << r.supplemented
      << ",\"twin_count\":" << r.twin_count << ",\"twin_steps\":" << r.twin_steps
      << ",\"order_exposures\":" << r.order_exposures << ",\"first_orders\":" << first_total
      << ",\"first_order_successes\":" << first_succ << ",\"runs_used\":" << r.runs_used
      << ",\"fallback_used\":" << (r.fallback_used ? "true" : "false") << ",\"witness\":"
      << (r.witness ? (*r.witness ? "true" : "false") : "null")
      << ",\"lazy\":" << (r.lazy ? "true" : "false") << "}";
    return o.str();
}

inline std::string mindeg_outcome_json(const MinDegOutcome& out, bool include_factor = true) {
    std::string s = "{\"success\":" + std::string(out.ok() ? "true" : "false");
    if (out.certificate) s += ",\"certificate\":" + certificate_json(*out.certificate);
    if (out.failure) s += ",\"failure\":" + failure_json(*out.failure);
    s += ",\"report\":" + mindeg_report_json(out.report);
    if (include_factor) s += ",\"factor\":" + factor_json(out.factor);
    return s + "}";
}

inline std::string special_sequence_json(const SpecialSequence& s) {
    return "{\"elems\":" + json_ints(s.elems) + ",\"succs\":" + json_ints(s.succs) +
           ",\"x\":" + std::to_string(s.x) + ",\"y\":" + std::to_string(s.y) +
           ",\"ell\":" + std::to_string(s.ell()) + "}";
}

inline std::string regular_outcome_json(const RegularOutcome& out) {
    std::string s = "{\"success\":" + std::string(out.ok() ? "true" : "false");
    if (out.certificate) s += ",\"certificate\":" + certificate_json(*out.certificate);
    if (out.failure) s += ",\"failure\":" + failure_json(*out.failure);
    s += ",\"report\":{\"n\":" + std::to_string(out.report.n) +
         ",\"cycle_count\":" + std::to_string(out.report.cycle_count) +
         ",\"path_len\":" + std::to_string(out.report.path_len) +
         ",\"interval_len\":" + std::to_string(out.report.interval_len) + ",\"sequences\":[";
    for (std::size_t i = 0; i < out.report.sequences.size(); ++i) {
        if (i) s += ",";
        s += special_sequence_json(out.report.sequences[i]);
    }
    s += "],\"ells\":" + json_ints(out.report.ells) + "}}";
    return s;
}

inline std::string clfactor_outcome_json(const ClFactorOutcome& out) {
    std::string s = "{\"success\":" + std::string(out.ok() ? "true" : "false");
    if (out.certificate) s += ",\"certificate\":" + certificate_json(*out.certificate);
    if (out.failure) s += ",\"failure\":" + failure_json(*out.failure);
    const auto& r = out.report;
    s += ",\"report\":{\"n\":" + std::to_string(r.n) + ",\"ell\":" + std::to_string(r.ell) +
         ",\"cycles_total\":" + std::to_string(r.cycles_total) +
         ",\"concatenated\":" + std::to_string(r.concatenated) +
         ",\"absorbed\":" + std::to_string(r.absorbed) +
         ",\"pairs_consumed\":" + std::to_string(r.pairs_consumed) +
         ",\"guard_violated\":" + (r.guard_violated ? "true" : "false") + "}}";
    return s;
}

inline std::string posa_outcome_json(const PosaOutcome& out) {
    std::string s = "{\"success\":" + std::string(out.ok() ? "true" : "false");
    if (out.certificate) s += ",\"certificate\":" + certificate_json(*out.certificate);
    if (out.failure) s += ",\"failure\":" + failure_json(*out.failure);
    return s + ",\"steps\":" + std::to_string(out.steps) + "}";
}

/// Standard output envelope: version, resolved-config hash, master seed.
inline std::string json_envelope(const std::string& kind, std::uint64_t seed,
                                 const std::string& config_dump, const std::string& payload) {
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a(config_dump)));
    return "{\"tool_version\":" + json_str(tool_version) + ",\"kind\":" + json_str(kind) +
           ",\"seed\":" + std::to_string(seed) + ",\"config_hash\":\"" + hash +
           "\",\"result\":" + payload + "}\n";
}

// ---- config parsing ----------------------------------------------------

inline void reject_unknown_keys(const nlohmann::json& j, const std::vector<std::string>& known,
                                const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
    std::vector<std::string> bad;
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) bad.push_back(it.key());
    if (!bad.empty()) {
        std::string msg = where + ": unknown key(s):";
        for (const auto& k : bad) msg += " " + k;
        throw ConfigError(msg);
    }
}

inline ConstructParams parse_construct_params(const nlohmann::json& j) {
    reject_unknown_keys(j, {"L_override", "run_len", "retries", "exposure_cap", "fallback",
                            "fallback_budget", "re_runs", "a_size", "alpha", "ell"},
                        "params");
    ConstructParams p;
    if (j.contains("L_override")) p.L_override = j.at("L_override").get<int>();
    if (j.contains("run_len")) p.run_len = j.at("run_len").get<int>();
    if (j.contains("retries")) p.retries = j.at("retries").get<int>();
    if (j.contains("exposure_cap")) p.exposure_cap = j.at("exposure_cap").get<int>();
    if (j.contains("fallback")) p.fallback = j.at("fallback").get<bool>();
    if (j.contains("fallback_budget")) p.fallback_budget = j.at("fallback_budget").get<long long>();
    if (j.contains("re_runs")) p.re_runs = j.at("re_runs").get<int>();
    if (j.contains("a_size")) p.a_size = j.at("a_size").get<int>();
    if (j.contains("alpha")) p.alpha = j.at("alpha").get<double>();
    if (j.contains("ell")) p.ell = j.at("ell").get<int>();
    return p;
}

inline ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
    reject_unknown_keys(j, {"experiment", "n", "trials", "seed", "workers", "model", "family", "t",
                            "eps", "gamma", "r_size", "s_size", "t_size", "grid", "a_size",
                            "params", "graph"},
                        "config");
    ExperimentConfig c;
    if (j.contains("experiment")) c.experiment = j.at("experiment").get<std::string>();
    if (j.contains("n")) c.n = j.at("n").get<int>();
    if (j.contains("trials")) c.trials = j.at("trials").get<long long>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("workers")) c.workers = j.at("workers").get<int>();
    if (j.contains("model")) c.model = j.at("model").get<std::string>();
    if (j.contains("family")) c.family = j.at("family").get<std::string>();
    if (j.contains("t")) c.t = j.at("t").get<int>();
    if (j.contains("eps")) c.eps = j.at("eps").get<double>();
    if (j.contains("gamma")) c.gamma = j.at("gamma").get<double>();
    if (j.contains("r_size")) c.r_size = j.at("r_size").get<int>();
    if (j.contains("s_size")) c.s_size = j.at("s_size").get<int>();
    if (j.contains("t_size")) c.t_size = j.at("t_size").get<int>();
    if (j.contains("grid")) c.grid = j.at("grid").get<std::vector<double>>();
    if (j.contains("a_size")) c.a_size = j.at("a_size").get<int>();
    if (j.contains("params")) c.cparams = parse_construct_params(j.at("params"));
    return c;
}

/// Canonical dump of the resolved experiment settings; hashed into outputs.
inline std::string canonical_config_string(const ExperimentConfig& c) {
    std::ostringstream o;
    o << "experiment=" << c.experiment << ";n=" << c.n << ";trials=" << c.trials
      << ";model=" << c.model << ";family=" << c.family << ";t=" << c.t
      << ";eps=" << format_double(c.eps) << ";gamma=" << format_double(c.gamma)
      << ";r=" << c.r_size << ";s=" << c.s_size << ";tz=" << c.t_size << ";grid=";
    for (std::size_t i = 0; i < c.grid.size(); ++i) o << (i ? "," : "") << format_double(c.grid[i]);
    o << ";a=" << (c.a_size ? std::to_string(*c.a_size) : "auto");
    const auto& p = c.cparams;
    o << ";L=" << (p.L_override ? std::to_string(*p.L_override) : "auto")
      << ";run_len=" << (p.run_len ? std::to_string(*p.run_len) : "auto") << ";retries=" << p.retries
      << ";cap=" << (p.exposure_cap ? std::to_string(*p.exposure_cap) : "auto")
      << ";fallback=" << (p.fallback ? 1 : 0) << ";fb_budget=" << p.fallback_budget
      << ";re_runs=" << p.re_runs << ";alpha=" << format_double(p.alpha)
      << ";ell=" << (p.ell ? std::to_string(*p.ell) : "auto");
    return o.str();
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

} // namespace hamperturb
