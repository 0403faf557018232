#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "core.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "permutation.hpp"
#include "result.hpp"

namespace hamperturb {

struct SpecialResult {
    std::optional<SpecialSequence> seq;
    std::optional<Failure> failure;
};

/// Checks the defining edge conditions of a special sequence against its
/// interval: elements sit at ascending interval positions, each has its
/// successor recorded, x reaches the first successor, consecutive elements
/// reach the next successor, y reaches the last element.
template <graph_like Gr>
bool special_sequence_valid(const Gr& g, const std::vector<int>& interval, const SpecialSequence& s) {
    const int ell = s.ell();
    if (ell < 1 || s.succs.size() != s.elems.size()) return false;
    int prev_pos = -1;
    for (int j = 0; j < ell; ++j) {
        int p = -1;
        for (std::size_t t = 0; t + 1 < interval.size(); ++t)
            if (interval[t] == s.elems[static_cast<std::size_t>(j)]) {
                p = static_cast<int>(t);
                break;
            }
        if (p < 0 || p <= prev_pos) return false;
        if (interval[static_cast<std::size_t>(p) + 1] != s.succs[static_cast<std::size_t>(j)]) return false;
        prev_pos = p;
    }
    if (!g.has_edge(s.x, s.succs.front())) return false;
    for (int j = 0; j + 1 < ell; ++j)
        if (!g.has_edge(s.elems[static_cast<std::size_t>(j)], s.succs[static_cast<std::size_t>(j) + 1]))
            return false;
    return g.has_edge(s.y, s.elems.back());
}

/// Staged search mirroring the expansion argument: the interval splits into
/// floor(ln n) equal pieces, candidate positions are the even ones with both
/// neighbors inside range, the seed level keeps candidates adjacent to x,
/// and each next level keeps candidates adjacent to some predecessor of the
/// current level. y is probed at every level; back-pointers give the
/// sequence. Growth below the continuation floor stalls the search.
template <graph_like Gr>
SpecialResult find_special_sequence(const Gr& g, const std::vector<int>& interval, int x, int y,
                                    [[maybe_unused]] Rng& rng) {
    const int n = g.size();
    const int tlen = static_cast<int>(interval.size());
    if (tlen < 4) return {std::nullopt, Failure{"special", "interval too small"}};
    const int levels = std::max(1, static_cast<int>(std::floor(std::log(static_cast<double>(n)))));

    auto piece_lo = [&](int i) { return static_cast<int>((static_cast<long long>(tlen) * i) / levels); };
    auto candidates_of = [&](int i) {
        std::vector<int> out;
        int lo = piece_lo(i), hi = piece_lo(i + 1);
        for (int p = lo + 1; p < hi; ++p)
            if (p % 2 == 0 && p + 1 < tlen) out.push_back(p);
        return out;
    };

    std::vector<std::vector<int>> chain;   // positions kept per level
    std::vector<std::vector<int>> parents; // index into previous level, -1 for seeds
    auto harvest = [&](int level_idx, int member_idx) {
        SpecialSequence s;
        s.x = x;
        s.y = y;
        std::vector<int> pos_chain;
        int li = level_idx, mi = member_idx;
        while (li >= 0) {
            pos_chain.push_back(chain[static_cast<std::size_t>(li)][static_cast<std::size_t>(mi)]);
            mi = parents[static_cast<std::size_t>(li)][static_cast<std::size_t>(mi)];
            --li;
        }
        for (auto it = pos_chain.rbegin(); it != pos_chain.rend(); ++it) {
            s.elems.push_back(interval[static_cast<std::size_t>(*it - 1)]);
            s.succs.push_back(interval[static_cast<std::size_t>(*it)]);
        }
        if (!special_sequence_valid(g, interval, s))
            throw std::logic_error("find_special_sequence: harvested sequence fails its own conditions");
        return s;
    };

    std::vector<int> seeds;
    std::vector<int> seed_par;
    for (int p : candidates_of(0))
        if (g.has_edge(interval[static_cast<std::size_t>(p)], x)) {
            seeds.push_back(p);
            seed_par.push_back(-1);
        }
    if (seeds.empty()) return {std::nullopt, Failure{"special", "stalled at level 1"}};
    chain.push_back(std::move(seeds));
    parents.push_back(std::move(seed_par));

    for (int i = 1; i <= levels; ++i) {
        const auto& cur = chain.back();
        for (std::size_t t = 0; t < cur.size(); ++t)
            if (g.has_edge(y, interval[static_cast<std::size_t>(cur[t]) - 1]))
                return {harvest(i - 1, static_cast<int>(t)), std::nullopt};
        if (i == levels)
            return {std::nullopt, Failure{"special", "no closing neighbor by level " + std::to_string(levels)}};

        auto cand = candidates_of(i);
        std::vector<int> next;
        std::vector<int> par;
        for (int p : cand) {
            int found = -1;
            for (std::size_t t = 0; t < cur.size() && found < 0; ++t)
                if (g.has_edge(interval[static_cast<std::size_t>(cur[t]) - 1],
                               interval[static_cast<std::size_t>(p)]))
                    found = static_cast<int>(t);
            if (found >= 0) {
                next.push_back(p);
                par.push_back(found);
            }
        }
        bool floor_ok = !next.empty() &&
                        (next.size() >= cur.size() ||
                         static_cast<int>(cur.size()) * 32 >= static_cast<int>(cand.size()));
        if (!floor_ok)
            return {std::nullopt, Failure{"special", "stalled at level " + std::to_string(i + 1)}};
        chain.push_back(std::move(next));
        parents.push_back(std::move(par));
    }
    return {std::nullopt, Failure{"special", "unreachable"}};
}

namespace detail {

/// New-path positions over the old path for one absorption: the stretch
/// [0..q_last] rewired through the harvested edges, then the tail. Junction
/// steps (non-unit position jumps) are asserted to be host edges.
template <graph_like Gr>
std::vector<int> zigzag_positions(const Gr& g, const std::vector<int>& path, const std::vector<int>& q) {
    const int l = static_cast<int>(q.size());
    const int len = static_cast<int>(path.size());
    auto lo = [&](int b) { return b == 0 ? 0 : q[static_cast<std::size_t>(b) - 1] + 1; };
    auto hi = [&](int b) { return q[static_cast<std::size_t>(b)]; };
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(len));
    auto push_range = [&](int from, int to) {
        int step = from <= to ? 1 : -1;
        for (int p = from;; p += step) {
            out.push_back(p);
            if (p == to) break;
        }
    };
    int b = l - 1;
    while (b >= 2) {
        push_range(hi(b), lo(b));
        b -= 2;
    }
    if (b == 1) {
        push_range(hi(1), lo(1));
        push_range(0, hi(0));
        b = 2;
    } else {
        push_range(hi(0), 0);
        b = 1;
    }
    for (; b <= l - 1; b += 2) push_range(lo(b), hi(b));
    if (q[static_cast<std::size_t>(l) - 1] + 1 < len)
        push_range(q[static_cast<std::size_t>(l) - 1] + 1, len - 1);

    if (static_cast<int>(out.size()) != len)
        throw std::logic_error("zigzag_positions: coverage broken");
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(len), 0);
    for (std::size_t t = 0; t < out.size(); ++t) {
        if (seen[static_cast<std::size_t>(out[t])]++)
            throw std::logic_error("zigzag_positions: position revisited");
        if (t > 0 && std::abs(out[t] - out[t - 1]) != 1 &&
            !g.has_edge(path[static_cast<std::size_t>(out[t - 1])], path[static_cast<std::size_t>(out[t])]))
            throw std::logic_error("zigzag_positions: junction edge missing");
    }
    return out;
}

} // namespace detail

/// Absorption pipeline for a given factor on a host whose degrees carry the
/// expansion: the longest cycle is cut into the spine path, every other
/// cycle contributes a reserved interval, and each absorption walks the
/// spine through a special sequence into the cycle. The last interval closes
/// the cycle the same way.
template <graph_like Gr>
RegularOutcome construct_hamilton_regular(const Gr& g, const TwoFactor& f, Rng& rng,
                                          const ConstructParams& params = {}) {
    if (g.size() != f.size())
        throw std::invalid_argument("construct_hamilton_regular: size mismatch");
    const int n = f.size();
    RegularOutcome out;
    out.report.n = n;
    out.report.cycle_count = f.cycle_count();

    auto verify_or_throw = [&](const Certificate& cert) {
        Graph host = union_graph([&] {
            if constexpr (std::is_same_v<Gr, Graph>) return g;
            else return g.materialize();
        }(), two_factor_graph(f));
        std::string why;
        if (!verify_certificate(host, cert, &why))
            throw std::logic_error("construct_hamilton_regular: invalid certificate: " + why);
    };

    const int k = f.cycle_count();
    int longest_idx = 0;
    for (int c = 1; c < k; ++c)
        if (f.cycles()[static_cast<std::size_t>(c)].size() >
            f.cycles()[static_cast<std::size_t>(longest_idx)].size())
            longest_idx = c;
    const int m = static_cast<int>(f.cycles()[static_cast<std::size_t>(longest_idx)].size());
    if (static_cast<double>(m) < params.alpha * n) {
        out.failure = Failure{"no-long-cycle", "longest cycle has " + std::to_string(m) + " vertices"};
        return out;
    }
    if (k == 1) {
        out.certificate = Certificate{f.cycles().front()};
        verify_or_throw(*out.certificate);
        return out;
    }

    // cycle order: spine first, others in canonical order; one cut pair each
    std::vector<int> cyc_order{longest_idx};
    for (int c = 0; c < k; ++c)
        if (c != longest_idx) cyc_order.push_back(c);
    std::vector<int> pair_off;
    for (int c : cyc_order) {
        int len = static_cast<int>(f.cycles()[static_cast<std::size_t>(c)].size());
        pair_off.push_back(rng.below_int(len));
    }
    auto cut_at = [&](int oi) { // v; its predecessor in cycle order is the cut mate v^-
        const auto& c = f.cycles()[static_cast<std::size_t>(cyc_order[static_cast<std::size_t>(oi)])];
        return c[static_cast<std::size_t>((pair_off[static_cast<std::size_t>(oi)] + 1) % c.size())];
    };

    std::vector<int> path;
    {
        const auto& c = f.cycles()[static_cast<std::size_t>(longest_idx)];
        int o = pair_off[0];
        for (int j = 1; j <= m; ++j) path.push_back(c[static_cast<std::size_t>((o + j) % m)]);
    }
    out.report.path_len = m;

    const int lnc = static_cast<int>(std::ceil(std::log(static_cast<double>(n))));
    const long long need = 2ll * k * ((n + 2ll * k * lnc - 1) / (2ll * k * lnc));
    const int width = m / (2 * k);
    const int stride = m / k;
    out.report.interval_len = width;
    bool fits = m >= need && width >= 4;
    std::vector<int> ivl_start(static_cast<std::size_t>(k));
    for (int i = 0; i < k && fits; ++i) {
        ivl_start[static_cast<std::size_t>(i)] = i * stride + 1;
        if (i * stride + width > m - 2) fits = false; // keep both path ends outside every interval
    }
    if (!fits) {
        out.failure = Failure{"intervals", "spine of " + std::to_string(m) +
                                               " cannot host " + std::to_string(k) + " intervals"};
        return out;
    }

    // step i absorbs the (i+1)-th cycle in order; the last step closes
    for (int i = 0; i < k; ++i) {
        const bool closing = i == k - 1;
        int x = path.front();
        int y = closing ? path.back() : cut_at(i + 1);
        std::vector<int> interval;
        interval.reserve(static_cast<std::size_t>(width));
        for (int t = 0; t < width; ++t)
            interval.push_back(path[static_cast<std::size_t>(ivl_start[static_cast<std::size_t>(i)] + t)]);

        SpecialResult sr = find_special_sequence(g, interval, x, y, rng);
        if (sr.failure) {
            sr.failure->detail += " (absorption step " + std::to_string(i + 1) + ")";
            out.failure = sr.failure;
            return out;
        }
        out.report.sequences.push_back(*sr.seq);
        out.report.ells.push_back(sr.seq->ell());

        std::vector<int> q;
        for (int v : sr.seq->elems)
            q.push_back(ivl_start[static_cast<std::size_t>(i)] +
                        static_cast<int>(std::find(interval.begin(), interval.end(), v) - interval.begin()));
        std::vector<int> zz = detail::zigzag_positions(g, path, q);

        std::vector<int> next;
        if (!closing) {
            const auto& c = f.cycles()[static_cast<std::size_t>(cyc_order[static_cast<std::size_t>(i + 1)])];
            const int mc = static_cast<int>(c.size());
            const int o = pair_off[static_cast<std::size_t>(i + 1)];
            next.reserve(path.size() + static_cast<std::size_t>(mc));
            for (int j = 0; j < mc; ++j) next.push_back(c[static_cast<std::size_t>(((o - j) % mc + mc) % mc)]);
            if (!g.has_edge(next.back(), path[static_cast<std::size_t>(q.back())]))
                throw std::logic_error("construct_hamilton_regular: entry edge missing");
            for (int p : zz) next.push_back(path[static_cast<std::size_t>(p)]);
            for (int j = i + 2; j < k; ++j) ivl_start[static_cast<std::size_t>(j)] += mc;
        } else {
            if (!g.has_edge(y, path[static_cast<std::size_t>(q.back())]))
                throw std::logic_error("construct_hamilton_regular: closing edge missing");
            next.reserve(path.size());
            for (int p : zz) next.push_back(path[static_cast<std::size_t>(p)]);
        }
        path = std::move(next);
    }

    out.certificate = Certificate{path};
    verify_or_throw(*out.certificate);
    return out;
}

} // namespace hamperturb
