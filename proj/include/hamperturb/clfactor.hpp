#pragma once

#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "core.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "permutation.hpp"
#include "result.hpp"

namespace hamperturb {

/// Uniform factor with n/ell cycles of length ell from a uniform shuffle.
inline TwoFactor sample_cl_factor(int n, int ell, Rng& rng) {
    if (ell < 3 || n % ell != 0)
        throw std::invalid_argument("sample_cl_factor: need ell >= 3 dividing n");
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(rng.below_int(i + 1))]);
    std::vector<std::vector<int>> cycles;
    for (int at = 0; at < n; at += ell)
        cycles.emplace_back(order.begin() + at, order.begin() + at + ell);
    return TwoFactor(n, std::move(cycles));
}

/// Builds a Hamiltonian cycle over a uniform cycle factor: a directed chain
/// of cycles joined end-to-start seeds the path, every leftover cycle is
/// absorbed through a fresh pair of consecutive path vertices, and one last
/// pair closes up. Pairs once tested are spent, so each test reads fresh
/// randomness of the factor's embedding. ell below the asymptotic floor for
/// the chosen alpha only sets a flag; small instances stay runnable.
template <graph_like Gr>
ClFactorOutcome concatenate_cycle_factor(const Gr& g, const TwoFactor& f, Rng& rng,
                                         const ConstructParams& params = {}) {
    if (g.size() != f.size())
        throw std::invalid_argument("concatenate_cycle_factor: size mismatch");
    const int n = f.size();
    const int k = f.cycle_count();
    const int ell = static_cast<int>(f.cycles().front().size());
    for (const auto& c : f.cycles())
        if (static_cast<int>(c.size()) != ell)
            throw std::invalid_argument("concatenate_cycle_factor: factor is not uniform");

    ClFactorOutcome out;
    out.report.n = n;
    out.report.ell = ell;
    out.report.cycles_total = k;
    const double alpha = params.alpha;
    out.report.guard_violated = static_cast<double>(ell) < 1000.0 / (alpha * alpha * alpha);

    auto verify_or_throw = [&](const Certificate& cert) {
        Graph host = union_graph([&] {
            if constexpr (std::is_same_v<Gr, Graph>) return g;
            else return g.materialize();
        }(), two_factor_graph(f));
        std::string why;
        if (!verify_certificate(host, cert, &why))
            throw std::logic_error("concatenate_cycle_factor: invalid certificate: " + why);
    };

    if (k == 1) {
        out.certificate = Certificate{f.cycles().front()};
        verify_or_throw(*out.certificate);
        return out;
    }

    // one cut pair per cycle: red precedes blue in cycle order
    std::vector<int> red(static_cast<std::size_t>(k)), blue(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        const auto& cyc = f.cycles()[static_cast<std::size_t>(c)];
        int o = rng.below_int(ell);
        red[static_cast<std::size_t>(c)] = cyc[static_cast<std::size_t>(o)];
        blue[static_cast<std::size_t>(c)] = cyc[static_cast<std::size_t>((o + 1) % ell)];
    }
    auto segment_into = [&](int c, std::vector<int>& dst) {
        const auto& cyc = f.cycles()[static_cast<std::size_t>(c)];
        int o = 0;
        while (cyc[static_cast<std::size_t>(o)] != blue[static_cast<std::size_t>(c)]) ++o;
        for (int j = 0; j < ell; ++j) dst.push_back(cyc[static_cast<std::size_t>((o + j) % ell)]);
    };

    std::vector<std::uint8_t> in_path(static_cast<std::size_t>(k), 0);
    std::vector<int> path;
    const double lnn = std::log(static_cast<double>(n));
    if (static_cast<double>(ell) > n / (lnn * lnn)) {
        segment_into(0, path);
        in_path[0] = 1;
        out.report.concatenated = 1;
    } else {
        const int target = std::max(1, static_cast<int>(alpha * n / (3.0 * ell)));
        std::vector<int> chain;
        for (int start = 0; start < k && chain.empty(); ++start) {
            std::vector<std::uint8_t> used(static_cast<std::size_t>(k), 0);
            std::vector<int> trial{start};
            used[static_cast<std::size_t>(start)] = 1;
            while (static_cast<int>(trial.size()) < target) {
                int cur = trial.back(), nxt = -1;
                for (int j = 0; j < k && nxt < 0; ++j)
                    if (!used[static_cast<std::size_t>(j)] &&
                        g.has_edge(red[static_cast<std::size_t>(cur)], blue[static_cast<std::size_t>(j)]))
                        nxt = j;
                if (nxt < 0) break;
                trial.push_back(nxt);
                used[static_cast<std::size_t>(nxt)] = 1;
            }
            if (static_cast<int>(trial.size()) >= target) chain = std::move(trial);
        }
        if (chain.empty()) {
            out.failure = Failure{"concat", "no directed chain of " + std::to_string(target) + " cycles"};
            return out;
        }
        for (int c : chain) {
            segment_into(c, path);
            in_path[static_cast<std::size_t>(c)] = 1;
        }
        out.report.concatenated = static_cast<int>(chain.size());
    }

    // spent vertices never pair again; the queue is rebuilt per absorption
    std::vector<std::uint8_t> spent(static_cast<std::size_t>(n), 0);
    auto build_queue = [&]() {
        std::vector<int> q;
        for (std::size_t p = 0; p + 1 < path.size();) {
            if (!spent[static_cast<std::size_t>(path[p])] && !spent[static_cast<std::size_t>(path[p + 1])]) {
                q.push_back(static_cast<int>(p));
                p += 2;
            } else {
                ++p;
            }
        }
        return q;
    };

    for (int c = 0; c < k; ++c) {
        if (in_path[static_cast<std::size_t>(c)]) continue;
        bool done = false;
        for (int p : build_queue()) {
            int a = path[static_cast<std::size_t>(p)], b = path[static_cast<std::size_t>(p) + 1];
            spent[static_cast<std::size_t>(a)] = spent[static_cast<std::size_t>(b)] = 1;
            ++out.report.pairs_consumed;
            if (!g.has_edge(path.front(), b) || !g.has_edge(a, blue[static_cast<std::size_t>(c)])) continue;
            std::vector<int> next;
            next.reserve(path.size() + static_cast<std::size_t>(ell));
            const auto& cyc = f.cycles()[static_cast<std::size_t>(c)];
            int o = 0;
            while (cyc[static_cast<std::size_t>(o)] != red[static_cast<std::size_t>(c)]) ++o;
            for (int j = 0; j < ell; ++j) next.push_back(cyc[static_cast<std::size_t>(((o - j) % ell + ell) % ell)]);
            for (int t = p; t >= 0; --t) next.push_back(path[static_cast<std::size_t>(t)]);
            for (std::size_t t = static_cast<std::size_t>(p) + 1; t < path.size(); ++t)
                next.push_back(path[t]);
            path = std::move(next);
            in_path[static_cast<std::size_t>(c)] = 1;
            ++out.report.absorbed;
            done = true;
            break;
        }
        if (!done) {
            out.failure = Failure{"pairs", "no absorbing pair for a leftover cycle"};
            return out;
        }
    }

    for (int p : build_queue()) {
        int a = path[static_cast<std::size_t>(p)], b = path[static_cast<std::size_t>(p) + 1];
        spent[static_cast<std::size_t>(a)] = spent[static_cast<std::size_t>(b)] = 1;
        ++out.report.pairs_consumed;
        if (!g.has_edge(path.front(), b) || !g.has_edge(a, path.back())) continue;
        std::vector<int> cycle;
        cycle.reserve(path.size());
        for (int t = 0; t <= p; ++t) cycle.push_back(path[static_cast<std::size_t>(t)]);
        for (int t = static_cast<int>(path.size()) - 1; t > p; --t)
            cycle.push_back(path[static_cast<std::size_t>(t)]);
        out.certificate = Certificate{std::move(cycle)};
        verify_or_throw(*out.certificate);
        return out;
    }
    out.failure = Failure{"close", "no closing pair"};
    return out;
}

} // namespace hamperturb
