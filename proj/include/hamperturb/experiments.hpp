#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "core.hpp"
#include "graph.hpp"
#include "mindeg.hpp"
#include "oracle.hpp"
#include "permutation.hpp"
#include "result.hpp"
#include "stats.hpp"

namespace hamperturb {

struct ExperimentConfig {
    std::string experiment;
    int n = 0;
    long long trials = 1;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string model = "s_n"; // or "g_n_2"
    std::string family = "near_regular";
    int t = -1;       // cycle length threshold; -1 means n
    double eps = 0.25;
    double gamma = 0.5;
    int r_size = 0;
    int s_size = 0;
    int t_size = 0;
    std::vector<double> grid;
    std::optional<int> a_size;
    ConstructParams cparams;
};

struct StatEntry {
    std::string name;
    long long count = 0;
    double mean = 0.0;
    double variance = 0.0;
    double radius3 = 0.0;
};

struct FreqEntry {
    std::string name;
    long long hits = 0;
    long long trials = 0;
    double freq = 0.0;
    BinomialCi ci;
};

struct Summary {
    std::string name;
    int n = 0;
    long long trials = 0;
    double param = 0.0; // grid coordinate for scan rows
    std::vector<StatEntry> stats;
    std::vector<FreqEntry> freqs;
    std::vector<std::pair<std::string, double>> notes;
    std::vector<std::pair<std::string, long long>> tallies;
};

inline StatEntry make_stat(const std::string& name, const RunningStat& rs) {
    return {name, rs.count, rs.mean, rs.variance(), rs.radius3()};
}

inline FreqEntry make_freq(const std::string& name, long long hits, long long trials) {
    FreqEntry f;
    f.name = name;
    f.hits = hits;
    f.trials = trials;
    f.freq = trials > 0 ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
    f.ci = trials > 0 ? clopper_pearson(hits, trials) : BinomialCi{};
    return f;
}

/// Runs fn(index, rng) for every trial index with a per-index derived
/// stream, records indexed, folding left to the caller. The schedule is a
/// shared counter, so results do not depend on the worker count.
template <typename Record, typename Fn>
std::vector<Record> run_trials(long long trials, std::uint64_t seed, int workers, Fn&& fn) {
    if (trials < 1) throw std::invalid_argument("run_trials: trials < 1");
    std::vector<Record> rec(static_cast<std::size_t>(trials));
    const int w = std::max(1, workers);
    if (w == 1) {
        for (long long i = 0; i < trials; ++i) {
            Rng rng(derive_stream(seed, static_cast<std::uint64_t>(i)));
            rec[static_cast<std::size_t>(i)] = fn(i, rng);
        }
        return rec;
    }
    std::atomic<long long> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    auto body = [&]() {
        for (;;) {
            long long i = next.fetch_add(1);
            if (i >= trials) return;
            try {
                Rng rng(derive_stream(seed, static_cast<std::uint64_t>(i)));
                rec[static_cast<std::size_t>(i)] = fn(i, rng);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < w - 1; ++k) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return rec;
}

namespace detail {

inline int containing_length(const TwoFactor& f, int v) {
    for (const auto& c : f.cycles())
        for (int u : c)
            if (u == v) return static_cast<int>(c.size());
    throw std::logic_error("containing_length: vertex missing from factor");
}

inline std::vector<std::vector<std::uint64_t>> adjacency_rows(const Graph& g) {
    const int n = g.size();
    const std::size_t words = static_cast<std::size_t>((n + 63) / 64);
    std::vector<std::vector<std::uint64_t>> rows(static_cast<std::size_t>(n),
                                                 std::vector<std::uint64_t>(words, 0));
    for (int v = 0; v < n; ++v)
        for (int u : g.neighbors(v))
            rows[static_cast<std::size_t>(v)][static_cast<std::size_t>(u) / 64] |=
                1ull << (static_cast<std::size_t>(u) % 64);
    return rows;
}

/// First r entries of a uniform shuffle of [0, n).
inline std::vector<int> sample_distinct(int n, int r, Rng& rng) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < r; ++i) {
        int j = i + rng.below_int(n - i);
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(r));
    return pool;
}

} // namespace detail

/// Cycle statistics of the permutation (or factor) model: count of cycles of
/// length at most t, tail of the longest cycle, and the length of the cycle
/// holding element 0.
inline Summary mc_cycle_stats(const ExperimentConfig& cfg) {
    const int n = cfg.n;
    const bool factor_model = cfg.model == "g_n_2";
    if (cfg.model != "s_n" && cfg.model != "g_n_2")
        throw std::invalid_argument("mc_cycle_stats: unknown model " + cfg.model);
    if (n < (factor_model ? 3 : 1)) throw std::invalid_argument("mc_cycle_stats: n too small");
    const int t = cfg.t < 0 ? n : cfg.t;
    if (t > n) throw std::invalid_argument("mc_cycle_stats: t > n");
    const int tail_len = std::max(1, static_cast<int>(std::ceil(cfg.eps * n)));

    struct Record {
        int cnt = 0;
        int longest = 0;
        int cont0 = 0;
    };
    auto recs = run_trials<Record>(cfg.trials, cfg.seed, cfg.workers, [&](long long, Rng& rng) {
        Record r;
        if (factor_model) {
            TwoFactor f = sample_two_factor(n, rng);
            r.cnt = f.cycle_count_upto(t);
            r.longest = f.longest_cycle();
            r.cont0 = detail::containing_length(f, 0);
        } else {
            Permutation p = sample_uniform(n, rng);
            CycleStructure cs(p);
            r.cnt = cs.cycle_count_upto(t);
            r.longest = cs.longest_cycle();
            r.cont0 = cs.containing_cycle_length(0);
        }
        return r;
    });

    RunningStat cycles;
    long long tail_hits = 0;
    std::vector<long long> hist(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& r : recs) {
        cycles.add(static_cast<double>(r.cnt));
        if (r.longest >= tail_len) ++tail_hits;
        ++hist[static_cast<std::size_t>(r.cont0)];
    }

    Summary s;
    s.name = "mc_cycle_stats";
    s.n = n;
    s.trials = cfg.trials;
    s.stats.push_back(make_stat("cycles_le_t", cycles));
    s.freqs.push_back(make_freq("longest_tail", tail_hits, cfg.trials));
    s.notes.emplace_back("t", static_cast<double>(t));
    s.notes.emplace_back("eps", cfg.eps);
    s.notes.emplace_back("tail_len", static_cast<double>(tail_len));
    if (!factor_model) s.notes.emplace_back("reference_mean", harmonic(t));
    for (int len = 1; len <= n; ++len)
        s.tallies.emplace_back("containing_len_" + std::to_string(len),
                               hist[static_cast<std::size_t>(len)]);
    return s;
}

struct ExactCycleStats {
    double mean_cycles = 0.0;
    double tail_freq = 0.0;
    std::vector<double> containing_law; // index = length, 0 unused
    long long support = 0;
};

/// Full enumeration over all permutations (conditioned to cycles >= 3 for
/// the factor model); feasible to n = 8.
inline ExactCycleStats exact_cycle_stats(int n, int t, const std::string& model, double eps) {
    if (n < 1 || n > 8) throw std::invalid_argument("exact_cycle_stats: need 1 <= n <= 8");
    const bool factor_model = model == "g_n_2";
    const int tail_len = std::max(1, static_cast<int>(std::ceil(eps * n)));
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    ExactCycleStats out;
    out.containing_law.assign(static_cast<std::size_t>(n) + 1, 0.0);
    double sum_cnt = 0.0, sum_tail = 0.0;
    do {
        Permutation p(img);
        CycleStructure cs(p);
        if (factor_model) {
            auto ty = cs.type();
            if (!ty.empty() && ty.back() < 3) continue;
        }
        ++out.support;
        sum_cnt += cs.cycle_count_upto(std::min(t, n));
        if (cs.longest_cycle() >= tail_len) sum_tail += 1.0;
        out.containing_law[static_cast<std::size_t>(cs.containing_cycle_length(0))] += 1.0;
    } while (std::next_permutation(img.begin(), img.end()));
    if (out.support == 0) throw std::invalid_argument("exact_cycle_stats: empty support");
    out.mean_cycles = sum_cnt / static_cast<double>(out.support);
    out.tail_freq = sum_tail / static_cast<double>(out.support);
    for (auto& v : out.containing_law) v /= static_cast<double>(out.support);
    return out;
}

/// Consecutive-position crossings: X counts positions i in the leading block
/// R whose (cyclically) adjacent images form an S-T pair in either order.
inline Summary mc_hitpairs(const ExperimentConfig& cfg) {
    const int n = cfg.n;
    const int r = cfg.r_size, sz = cfg.s_size, tz = cfg.t_size;
    if (n < 2) throw std::invalid_argument("mc_hitpairs: n < 2");
    if (r < 0 || r > n || sz < 0 || tz < 0 || sz + tz > n)
        throw std::invalid_argument("mc_hitpairs: bad set sizes (S and T must fit disjointly)");
    const double e_x = 2.0 * r * sz * tz / (static_cast<double>(n) * (n - 1));
    const double margin = (1.0 - cfg.gamma) * e_x;

    auto crossing = [&](int a, int b) {
        bool as = a < sz, bs = b < sz;
        bool at = a >= sz && a < sz + tz, bt = b >= sz && b < sz + tz;
        return (as && bt) || (at && bs);
    };
    struct Record {
        int x = 0;
    };
    auto recs = run_trials<Record>(cfg.trials, cfg.seed, cfg.workers, [&](long long, Rng& rng) {
        Permutation p = sample_uniform(n, rng);
        const auto& seq = p.images();
        Record rec;
        for (int i = 0; i < r; ++i)
            if (crossing(seq[static_cast<std::size_t>(i)], seq[static_cast<std::size_t>((i + 1) % n)]))
                ++rec.x;
        return rec;
    });

    RunningStat x;
    long long lower = 0;
    for (const auto& rec : recs) {
        x.add(static_cast<double>(rec.x));
        if (static_cast<double>(rec.x) < margin) ++lower;
    }
    Summary s;
    s.name = "mc_hitpairs";
    s.n = n;
    s.trials = cfg.trials;
    s.stats.push_back(make_stat("x", x));
    s.freqs.push_back(make_freq("x_lower_tail", lower, cfg.trials));
    s.notes.emplace_back("e_x_formula", e_x);
    s.notes.emplace_back("gamma", cfg.gamma);
    s.notes.emplace_back("r_size", static_cast<double>(r));
    s.notes.emplace_back("s_size", static_cast<double>(sz));
    s.notes.emplace_back("t_size", static_cast<double>(tz));
    return s;
}

/// Exact mean of the crossing count over all n! permutations; n <= 8.
inline double exact_hitpairs_mean(int n, int r, int sz, int tz) {
    if (n < 2 || n > 8) throw std::invalid_argument("exact_hitpairs_mean: need 2 <= n <= 8");
    if (r < 0 || r > n || sz < 0 || tz < 0 || sz + tz > n)
        throw std::invalid_argument("exact_hitpairs_mean: bad sizes");
    std::vector<int> seq(static_cast<std::size_t>(n));
    std::iota(seq.begin(), seq.end(), 0);
    long long total = 0, perms = 0;
    do {
        ++perms;
        for (int i = 0; i < r; ++i) {
            int a = seq[static_cast<std::size_t>(i)], b = seq[static_cast<std::size_t>((i + 1) % n)];
            bool as = a < sz, bs = b < sz;
            bool at = a >= sz && a < sz + tz, bt = b >= sz && b < sz + tz;
            if ((as && bt) || (at && bs)) ++total;
        }
    } while (std::next_permutation(seq.begin(), seq.end()));
    return static_cast<double>(total) / static_cast<double>(perms);
}

/// Frequency of uniform r-subset deletions breaking the induced minimum
/// degree bound deg >= (1 - 2r/n) d. Integer comparison keeps it exact.
inline Summary mc_induced_mindegree(const Graph& g, const ExperimentConfig& cfg) {
    const int n = g.size();
    const int r = cfg.r_size;
    if (r < 0 || r >= n) throw std::invalid_argument("mc_induced_mindegree: need 0 <= r < n");
    const int d = min_degree(g);
    auto rows = detail::adjacency_rows(g);
    const std::size_t words = rows.empty() ? 0 : rows.front().size();

    struct Record {
        std::uint8_t fail = 0;
    };
    auto recs = run_trials<Record>(cfg.trials, cfg.seed, cfg.workers, [&](long long, Rng& rng) {
        auto x = detail::sample_distinct(n, r, rng);
        std::vector<std::uint64_t> mask(words, 0);
        for (int v : x) mask[static_cast<std::size_t>(v) / 64] |= 1ull << (v % 64);
        Record rec;
        for (int v = 0; v < n && !rec.fail; ++v) {
            if (mask[static_cast<std::size_t>(v) / 64] >> (v % 64) & 1) continue;
            long long deg = 0;
            const auto& row = rows[static_cast<std::size_t>(v)];
            for (std::size_t w = 0; w < words; ++w)
                deg += __builtin_popcountll(row[w] & ~mask[w]);
            if (deg * n < static_cast<long long>(d) * (n - 2ll * r)) rec.fail = 1;
        }
        return rec;
    });

    long long fails = 0;
    for (const auto& rec : recs) fails += rec.fail;
    Summary s;
    s.name = "mc_induced_mindegree";
    s.n = n;
    s.trials = cfg.trials;
    s.freqs.push_back(make_freq("event_failed", fails, cfg.trials));
    s.notes.emplace_back("min_degree", static_cast<double>(d));
    s.notes.emplace_back("r", static_cast<double>(r));
    s.notes.emplace_back("threshold", static_cast<double>(d) * (n - 2.0 * r) / n);
    return s;
}

/// Frequency of random disjoint (S, T) failing the expansion bound
/// Y >= d' s t / 16n, where Y counts T-vertices seeing S.
inline Summary mc_expansion(const Graph& g, const ExperimentConfig& cfg) {
    const int n = g.size();
    const int sz = cfg.s_size, tz = cfg.t_size;
    if (sz < 0 || tz < 0 || sz + tz > n) throw std::invalid_argument("mc_expansion: s + t > n");
    const int d = min_degree(g);
    const double dprime = sz > 0 ? std::min(static_cast<double>(d), static_cast<double>(n) / sz)
                                 : static_cast<double>(d);
    const double threshold = dprime * sz * tz / (16.0 * n);
    auto rows = detail::adjacency_rows(g);
    const std::size_t words = rows.empty() ? 0 : rows.front().size();

    struct Record {
        std::uint8_t fail = 0;
    };
    auto recs = run_trials<Record>(cfg.trials, cfg.seed, cfg.workers, [&](long long, Rng& rng) {
        auto both = detail::sample_distinct(n, sz + tz, rng);
        std::vector<std::uint64_t> mask_s(words, 0);
        for (int i = 0; i < sz; ++i) {
            int v = both[static_cast<std::size_t>(i)];
            mask_s[static_cast<std::size_t>(v) / 64] |= 1ull << (v % 64);
        }
        int y = 0;
        for (int i = sz; i < sz + tz; ++i) {
            const auto& row = rows[static_cast<std::size_t>(both[static_cast<std::size_t>(i)])];
            for (std::size_t w = 0; w < words; ++w)
                if (row[w] & mask_s[w]) {
                    ++y;
                    break;
                }
        }
        return Record{static_cast<std::uint8_t>(y < threshold ? 1 : 0)};
    });

    long long fails = 0;
    for (const auto& rec : recs) fails += rec.fail;
    Summary s;
    s.name = "mc_expansion";
    s.n = n;
    s.trials = cfg.trials;
    s.freqs.push_back(make_freq("event_failed", fails, cfg.trials));
    s.notes.emplace_back("min_degree", static_cast<double>(d));
    s.notes.emplace_back("d_prime", dprime);
    s.notes.emplace_back("threshold", threshold);
    return s;
}

/// Lower-bound obstruction statistics over the factor alone: edges inside
/// the small side A, short cycles fully inside B, and the component-count
/// witness.
inline Summary mc_lower_bound(const ExperimentConfig& cfg) {
    const int n = cfg.n;
    if (n < 3) throw std::invalid_argument("mc_lower_bound: n < 3");
    int a = cfg.a_size.value_or(static_cast<int>(
        std::floor((1.0 - cfg.eps) * std::sqrt(n * std::log(static_cast<double>(n)) / 2.0))));
    if (a < 0 || a >= n) throw std::invalid_argument("mc_lower_bound: bad a");
    const int t_short = std::max(1, static_cast<int>(std::floor(
                                        std::sqrt(static_cast<double>(n)) / std::log(static_cast<double>(n)))));
    VertexSet av(n);
    for (int v = 0; v < a; ++v) av.add(v);

    struct Record {
        long long z = 0;
        int k = 0;
        std::uint8_t witness = 0;
    };
    auto recs = run_trials<Record>(cfg.trials, cfg.seed, cfg.workers, [&](long long, Rng& rng) {
        TwoFactor f = sample_two_factor(n, rng);
        Record rec;
        for (const auto& c : f.cycles()) {
            const int m = static_cast<int>(c.size());
            bool all_b = true;
            for (int j = 0; j < m; ++j) {
                int u = c[static_cast<std::size_t>(j)], v = c[static_cast<std::size_t>((j + 1) % m)];
                if (u < a && v < a) ++rec.z;
                if (u < a) all_b = false;
            }
            if (all_b && m <= t_short) ++rec.k;
        }
        rec.witness = bipartite_witness(f, av) ? 1 : 0;
        return rec;
    });

    RunningStat z, k;
    long long wit = 0;
    for (const auto& rec : recs) {
        z.add(static_cast<double>(rec.z));
        k.add(static_cast<double>(rec.k));
        wit += rec.witness;
    }
    Summary s;
    s.name = "mc_lower_bound";
    s.n = n;
    s.trials = cfg.trials;
    s.stats.push_back(make_stat("z", z));
    s.stats.push_back(make_stat("k_short", k));
    s.freqs.push_back(make_freq("witness", wit, cfg.trials));
    s.notes.emplace_back("e_z_formula", a * (a - 1.0) / (n - 1.0));
    s.notes.emplace_back("a_size", static_cast<double>(a));
    s.notes.emplace_back("t_short", static_cast<double>(t_short));
    s.notes.emplace_back("eps", cfg.eps);
    return s;
}

/// Success-rate sweep of the randomized pipeline over a degree (or eps)
/// grid, one Summary per grid point. Instances are sampled fresh per trial;
/// failures are tallied by stage and never fatal.
inline std::vector<Summary> threshold_scan(const ExperimentConfig& cfg) {
    const int n = cfg.n;
    if (n < 3) throw std::invalid_argument("threshold_scan: n < 3");
    if (cfg.grid.empty()) throw std::invalid_argument("threshold_scan: empty grid");
    const bool lower = cfg.family == "lower_bound";
    const bool complete = cfg.family == "complete";
    const bool blowup = cfg.family == "clique_blowup";
    const bool nearreg = cfg.family == "near_regular";
    if (!lower && !complete && !blowup && !nearreg)
        throw std::invalid_argument("threshold_scan: unknown family " + cfg.family);
    const double scale = std::sqrt(n * std::log(static_cast<double>(n)) / 2.0);

    struct Record {
        std::uint8_t success = 0;
        std::uint8_t witness_known = 0;
        std::uint8_t witness = 0;
        long long exposures = 0;
        std::string stage;
    };

    std::vector<Summary> table;
    for (std::size_t pi = 0; pi < cfg.grid.size(); ++pi) {
        const double param = cfg.grid[pi];
        ConstructParams cp = cfg.cparams;
        int d_target = 0;
        std::optional<Graph> shared;
        std::optional<CompleteBipartite> shared_cb;
        if (complete) {
            shared = complete_graph(n);
            d_target = n - 1;
        } else if (blowup) {
            d_target = std::max(3, static_cast<int>(std::llround(param * scale)));
            shared = clique_blowup(n, d_target);
        } else if (lower) {
            shared_cb = lower_bound_graph(n, param);
            d_target = shared_cb->a_size();
            cp.a_size = shared_cb->a_size();
        } else {
            d_target = std::max(3, static_cast<int>(std::llround(param * scale)));
        }

        const std::uint64_t point_seed = derive_seed(cfg.seed, 0x5ca40000ull + pi);
        auto recs = run_trials<Record>(cfg.trials, point_seed, cfg.workers, [&](long long, Rng& rng) {
            Record rec;
            MinDegOutcome out = [&]() {
                if (nearreg) {
                    Graph g = near_regular_graph(n, d_target, rng);
                    return construct_hamilton_min_degree(g, rng, cp);
                }
                if (lower) return construct_hamilton_min_degree(*shared_cb, rng, cp);
                return construct_hamilton_min_degree(*shared, rng, cp);
            }();
            rec.success = out.ok() ? 1 : 0;
            rec.exposures = out.report.exposure_count;
            if (!out.ok()) rec.stage = out.failure->stage;
            if (out.report.witness) {
                rec.witness_known = 1;
                rec.witness = *out.report.witness ? 1 : 0;
            }
            return rec;
        });

        long long succ = 0, wit = 0, wit_known = 0;
        RunningStat expo;
        std::vector<std::pair<std::string, long long>> stages;
        for (const auto& rec : recs) {
            succ += rec.success;
            expo.add(static_cast<double>(rec.exposures));
            if (rec.witness_known) {
                ++wit_known;
                wit += rec.witness;
            }
            if (!rec.stage.empty()) {
                auto it = std::find_if(stages.begin(), stages.end(),
                                       [&](const auto& e) { return e.first == rec.stage; });
                if (it == stages.end()) stages.emplace_back(rec.stage, 1);
                else ++it->second;
            }
        }
        std::sort(stages.begin(), stages.end());

        Summary s;
        s.name = cfg.family;
        s.n = n;
        s.trials = cfg.trials;
        s.param = param;
        s.freqs.push_back(make_freq("success", succ, cfg.trials));
        if (lower && wit_known > 0) s.freqs.push_back(make_freq("witness", wit, wit_known));
        s.stats.push_back(make_stat("exposures", expo));
        s.notes.emplace_back("degree_target", static_cast<double>(d_target));
        for (auto& st : stages) s.tallies.emplace_back("stage_" + st.first, st.second);
        table.push_back(std::move(s));
    }
    return table;
}

} // namespace hamperturb
