#pragma once

#include <cassert>
#include <cmath>
#include <optional>
#include <vector>

#include "core.hpp"
#include "graph.hpp"
#include "lazy.hpp"
#include "oracle.hpp"
#include "permutation.hpp"
#include "posa.hpp"
#include "result.hpp"

namespace hamperturb {

inline int default_long_threshold(int n) {
    double ln = std::log(static_cast<double>(n));
    return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)) * ln * ln));
}

inline int default_run_length(int n) {
    double ln = std::log(static_cast<double>(n));
    return std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)) * ln)));
}

/// The growing path, as aligned-factor slots in visiting order. Values are
/// only known where exposed; the start value and end value always are.
struct PathState {
    std::vector<int> slots;
    int start_val = -1;
    int end_val = -1;
    int long_treated = 0;
};

/// Seeds the path on the aligned factor's first (longest) cycle, then splices
/// in every other cycle of length >= L by exposing runs of run_len
/// consecutive slots until one holds a neighbor of the current end. The seed
/// cycle always hosts the path even when it is below L, so that the
/// pair-by-pair phase has a backbone at small n.
template <graph_like Gr>
std::optional<Failure> absorb_long_cycles(const Gr& g, LazyPermutation& lp, const TwoFactor& f_star,
                                          int L, int run_len, int retries, Rng& rng, PathState& state) {
    const auto& cycles = f_star.cycles();
    const auto& seed = cycles.front();
    const int m0 = static_cast<int>(seed.size());
    state.slots.clear();
    state.end_val = lp.expose_image(seed[0]);
    state.start_val = lp.expose_image(seed[1]);
    state.slots.reserve(static_cast<std::size_t>(f_star.size()));
    for (int j = 1; j < m0; ++j) state.slots.push_back(seed[static_cast<std::size_t>(j)]);
    state.slots.push_back(seed[0]);
    state.long_treated = 0;

    for (std::size_t ci = 1; ci < cycles.size(); ++ci) {
        const auto& cyc = cycles[ci];
        const int m = static_cast<int>(cyc.size());
        if (m < L) continue;
        const int len = std::min(run_len, m);
        bool spliced = false;
        for (int attempt = 0; attempt < retries && !spliced; ++attempt) {
            std::vector<int> starts;
            for (int o = 0; o < m; ++o) {
                bool free = true;
                for (int j = 0; j < len && free; ++j)
                    free = lp.state(cyc[static_cast<std::size_t>((o + j) % m)]) == SlotState::unexposed;
                if (free) starts.push_back(o);
            }
            if (starts.empty()) break;
            int o = starts[static_cast<std::size_t>(rng.below_int(static_cast<int>(starts.size())))];
            int hit = -1;
            for (int j = 0; j < len; ++j) {
                int v = lp.expose_image(cyc[static_cast<std::size_t>((o + j) % m)]);
                if (hit < 0 && g.has_edge(v, state.end_val)) hit = (o + j) % m;
            }
            if (hit < 0) continue;
            for (int t = 0; t < m; ++t)
                state.slots.push_back(cyc[static_cast<std::size_t>(((hit - t) % m + m) % m)]);
            state.end_val = lp.expose_image(cyc[static_cast<std::size_t>((hit + 1) % m)]);
            spliced = true;
        }
        if (!spliced)
            return Failure{"phase1", "no usable exposure window on cycle " + std::to_string(ci),
                           lp.exposed_count()};
        ++state.long_treated;
    }
    return std::nullopt;
}

/// Candidate pairs for the absorption steps. Pairs are consecutive path
/// slots whose unordered value set has been revealed; step s runs over the
/// untreated cycles in order, with a final step that closes the cycle.
struct GoodPairTable {
    struct Entry {
        int slot_a = -1, slot_b = -1; // path-consecutive at build time
        int u = -1, v = -1;           // unordered value set
        std::uint64_t fwd_mask = 0;   // step bits: value-at-a side matches the end anchor
        std::uint64_t rev_mask = 0;
        bool isolated = false;        // survived the surrounding-window rule
        bool good_for(int s) const { return ((fwd_mask | rev_mask) >> s) & 1; }
        bool twin_for(int s) const { return ((fwd_mask & rev_mask) >> s) & 1; }
    };
    std::vector<Entry> pairs;
    std::vector<std::vector<int>> per_step;
    std::vector<int> raw_counts;
    std::vector<int> isolated_counts;
    std::vector<int> anchor_a; // per step: the entry vertex of the cycle to absorb
    std::vector<int> anchor_b; // per step: the path end the step starts from
    int k = 0;
    int supplemented = 0;
};

/// Builds the step tables on the finished backbone path. An ordered value
/// pair (x, y) fits step s when x neighbors the step's starting end and y
/// neighbors the step's entry anchor, both unexposed. A candidate pair is
/// kept as isolated only if, among the four consecutive path vertices around
/// it, no ordered pair other than the central one (in either order) fits any
/// step; this makes the kept pairs pairwise disjoint and keeps their later
/// order resolutions from interfering with each other. Steps whose isolated
/// pool is empty are topped up with raw fitting pairs chosen disjointly:
/// dense hosts kill every window yet absorb through such pairs as twins.
template <graph_like Gr>
GoodPairTable find_good_pairs(const Gr& g, const PathState& state, LazyPermutation& lp,
                              const std::vector<std::pair<int, int>>& anchors) {
    GoodPairTable table;
    table.k = static_cast<int>(anchors.size());
    const int steps = table.k + 1;
    if (steps > 63) throw std::invalid_argument("find_good_pairs: too many cycles to absorb");
    table.raw_counts.assign(static_cast<std::size_t>(steps), 0);
    table.isolated_counts.assign(static_cast<std::size_t>(steps), 0);
    table.per_step.assign(static_cast<std::size_t>(steps), {});
    table.anchor_a.resize(static_cast<std::size_t>(steps));
    table.anchor_b.resize(static_cast<std::size_t>(steps));
    for (int s = 0; s < steps; ++s) {
        table.anchor_b[static_cast<std::size_t>(s)] =
            s == 0 ? state.end_val : anchors[static_cast<std::size_t>(s - 1)].second;
        table.anchor_a[static_cast<std::size_t>(s)] =
            s < table.k ? anchors[static_cast<std::size_t>(s)].first : state.start_val;
    }

    const auto& slots = state.slots;
    const int len = static_cast<int>(slots.size());
    struct Cand {
        int p;
        std::uint64_t fwd = 0, rev = 0;
    };
    std::vector<Cand> cands;
    auto fits = [&](int x, int y, int s) {
        return g.has_edge(x, table.anchor_b[static_cast<std::size_t>(s)]) &&
               g.has_edge(y, table.anchor_a[static_cast<std::size_t>(s)]);
    };
    for (int p = 0; p + 1 < len; ++p) {
        int sa = slots[static_cast<std::size_t>(p)], sb = slots[static_cast<std::size_t>(p + 1)];
        if (lp.state(sa) != SlotState::unexposed || lp.state(sb) != SlotState::unexposed) continue;
        int va = lp.peek_value(sa), vb = lp.peek_value(sb);
        Cand c{p, 0, 0};
        for (int s = 0; s < steps; ++s) {
            bool f = fits(va, vb, s), r = fits(vb, va, s);
            table.raw_counts[static_cast<std::size_t>(s)] += (f ? 1 : 0) + (r ? 1 : 0);
            if (f) c.fwd |= (1ull << s);
            if (r) c.rev |= (1ull << s);
        }
        if (c.fwd | c.rev) cands.push_back(c);
    }

    // window rule: collect the up-to-four surrounding values with their
    // exposure status; any fitting non-central ordered pair disqualifies
    std::vector<std::uint8_t> slot_used(static_cast<std::size_t>(lp.size()), 0);
    auto register_pair = [&](const Cand& c, bool isolated) {
        int sa = slots[static_cast<std::size_t>(c.p)], sb = slots[static_cast<std::size_t>(c.p + 1)];
        if (slot_used[static_cast<std::size_t>(sa)] || slot_used[static_cast<std::size_t>(sb)])
            throw std::logic_error("find_good_pairs: kept pairs are not a matching");
        slot_used[static_cast<std::size_t>(sa)] = slot_used[static_cast<std::size_t>(sb)] = 1;
        auto set = lp.expose_pair_set(sa, sb);
        GoodPairTable::Entry e;
        e.slot_a = sa;
        e.slot_b = sb;
        e.u = set.first;
        e.v = set.second;
        e.fwd_mask = c.fwd;
        e.rev_mask = c.rev;
        e.isolated = isolated;
        table.pairs.push_back(e);
    };

    for (const Cand& c : cands) {
        int idx[4] = {c.p - 1, c.p, c.p + 1, c.p + 2};
        int val[4];
        bool open[4], present[4];
        for (int t = 0; t < 4; ++t) {
            present[t] = idx[t] >= 0 && idx[t] < len;
            if (!present[t]) continue;
            int sl = slots[static_cast<std::size_t>(idx[t])];
            val[t] = lp.peek_value(sl);
            open[t] = lp.state(sl) == SlotState::unexposed;
        }
        bool keep = true;
        for (int i = 0; i < 4 && keep; ++i) {
            for (int j = 0; j < 4 && keep; ++j) {
                if (i == j || !present[i] || !present[j]) continue;
                if ((i == 1 && j == 2) || (i == 2 && j == 1)) continue;
                if (!open[i] || !open[j]) continue;
                for (int s = 0; s < steps; ++s)
                    if (fits(val[i], val[j], s)) {
                        keep = false;
                        break;
                    }
            }
        }
        if (keep) register_pair(c, true);
    }
    for (std::size_t i = 0; i < table.pairs.size(); ++i)
        for (int s = 0; s < steps; ++s)
            if (table.pairs[i].good_for(s)) {
                table.per_step[static_cast<std::size_t>(s)].push_back(static_cast<int>(i));
                ++table.isolated_counts[static_cast<std::size_t>(s)];
            }

    // Thin pools get a dedicated batch of raw pairs topping the pre-batch
    // count up to a fixed quota. The quota is judged against the snapshot so
    // a batch that also fits later steps never shrinks their own batch:
    // under a shared batch, the injective reservations starve the last steps.
    constexpr int quota = 6;
    std::vector<int> base(static_cast<std::size_t>(steps));
    for (int s = 0; s < steps; ++s)
        base[static_cast<std::size_t>(s)] =
            static_cast<int>(table.per_step[static_cast<std::size_t>(s)].size());
    for (int s = 0; s < steps; ++s) {
        int added = 0;
        for (const Cand& c : cands) {
            if (base[static_cast<std::size_t>(s)] + added >= quota) break;
            if (!(((c.fwd | c.rev) >> s) & 1)) continue;
            int sa = slots[static_cast<std::size_t>(c.p)], sb = slots[static_cast<std::size_t>(c.p + 1)];
            if (slot_used[static_cast<std::size_t>(sa)] || slot_used[static_cast<std::size_t>(sb)]) continue;
            register_pair(c, false);
            ++added;
            ++table.supplemented;
            int idx = static_cast<int>(table.pairs.size()) - 1;
            for (int s2 = 0; s2 < steps; ++s2)
                if (table.pairs[static_cast<std::size_t>(idx)].good_for(s2))
                    table.per_step[static_cast<std::size_t>(s2)].push_back(idx);
        }
    }
    for (auto& lst : table.per_step) std::sort(lst.begin(), lst.end());
    return table;
}

/// Injective reservation of pairs fitting a step in both orders. Greedy over
/// ascending step then ascending pair keeps it deterministic and maximal: a
/// step left without a reservation has no unreserved both-ways pair at all.
struct TwinAssignment {
    std::vector<int> twin_of_step; // pair index or -1
    std::vector<std::uint8_t> reserved;
    int size = 0;
};

inline TwinAssignment select_twins(const GoodPairTable& table) {
    TwinAssignment tw;
    const int steps = table.k + 1;
    tw.twin_of_step.assign(static_cast<std::size_t>(steps), -1);
    tw.reserved.assign(table.pairs.size(), 0);
    for (int s = 0; s < steps; ++s) {
        for (int idx : table.per_step[static_cast<std::size_t>(s)]) {
            if (tw.reserved[static_cast<std::size_t>(idx)]) continue;
            if (!table.pairs[static_cast<std::size_t>(idx)].twin_for(s)) continue;
            tw.reserved[static_cast<std::size_t>(idx)] = 1;
            tw.twin_of_step[static_cast<std::size_t>(s)] = idx;
            ++tw.size;
            break;
        }
    }
    return tw;
}

/// True iff no unreserved both-ways pair could extend the reservation to a
/// step that lacks one. Used by tests as the maximality audit.
inline bool twin_assignment_maximal(const GoodPairTable& table, const TwinAssignment& tw) {
    const int steps = table.k + 1;
    for (int s = 0; s < steps; ++s) {
        if (tw.twin_of_step[static_cast<std::size_t>(s)] >= 0) continue;
        for (int idx : table.per_step[static_cast<std::size_t>(s)])
            if (!tw.reserved[static_cast<std::size_t>(idx)] &&
                table.pairs[static_cast<std::size_t>(idx)].twin_for(s))
                return false;
    }
    return true;
}

struct Phase2Result {
    std::optional<std::vector<int>> cycle_slots;
    std::optional<Failure> failure;
};

/// Runs the absorption steps. A reserved both-ways pair completes its step in
/// whichever order comes out; any other step resolves candidate orders one by
/// one, each a fresh fair coin in lazy mode, until one lands with the
/// end-anchor side earlier on the current path. The used pair becomes the
/// splice point: the tail is walked backwards from the end, then the
/// absorbed cycle is traversed from its entry anchor. The final step splices
/// the path's two ends together and yields the cyclic slot order.
template <graph_like Gr>
Phase2Result absorb_short_cycles(const Gr& g, PathState& state, LazyPermutation& lp,
                                 const TwoFactor& f_star, const std::vector<int>& short_ids,
                                 const std::vector<int>& anchor_offs, const GoodPairTable& table,
                                 const TwinAssignment& twins, MinDegReport& rep) {
    const int steps = table.k + 1;
    std::vector<int> pos(static_cast<std::size_t>(lp.size()), -1);
    auto reindex = [&]() {
        std::fill(pos.begin(), pos.end(), -1);
        for (std::size_t i = 0; i < state.slots.size(); ++i)
            pos[static_cast<std::size_t>(state.slots[i])] = static_cast<int>(i);
    };
    reindex();
    std::vector<std::uint8_t> used(table.pairs.size(), 0);

    auto try_pair = [&](int idx, int s, bool* adjacent) -> bool {
        const auto& e = table.pairs[static_cast<std::size_t>(idx)];
        int pa = pos[static_cast<std::size_t>(e.slot_a)], pb = pos[static_cast<std::size_t>(e.slot_b)];
        if (pa < 0 || pb < 0 || std::abs(pa - pb) != 1) {
            *adjacent = false;
            return false;
        }
        *adjacent = true;
        auto vals = lp.expose_pair_order(e.slot_a, e.slot_b);
        int v_earlier = pa < pb ? vals.first : vals.second;
        int v_later = pa < pb ? vals.second : vals.first;
        return g.has_edge(v_earlier, table.anchor_b[static_cast<std::size_t>(s)]) &&
               g.has_edge(v_later, table.anchor_a[static_cast<std::size_t>(s)]);
    };

    auto reroute = [&](int idx, int s) {
        const auto& e = table.pairs[static_cast<std::size_t>(idx)];
        int pa = pos[static_cast<std::size_t>(e.slot_a)], pb = pos[static_cast<std::size_t>(e.slot_b)];
        int cut = std::min(pa, pb);
        const int len = static_cast<int>(state.slots.size());
        std::vector<int> next;
        next.reserve(state.slots.size() + 64);
        for (int i = 0; i <= cut; ++i) next.push_back(state.slots[static_cast<std::size_t>(i)]);
        for (int i = len - 1; i > cut; --i) next.push_back(state.slots[static_cast<std::size_t>(i)]);
        if (s < table.k) {
            const auto& cyc = f_star.cycles()[static_cast<std::size_t>(short_ids[static_cast<std::size_t>(s)])];
            const int m = static_cast<int>(cyc.size());
            const int off = anchor_offs[static_cast<std::size_t>(s)];
            for (int t = 0; t < m; ++t)
                next.push_back(cyc[static_cast<std::size_t>(((off - t) % m + m) % m)]);
            state.end_val = table.anchor_b[static_cast<std::size_t>(s + 1)];
        }
        state.slots = std::move(next);
        reindex();
    };

    for (int s = 0; s < steps; ++s) {
        if (state.end_val != table.anchor_b[static_cast<std::size_t>(s)])
            throw std::logic_error("absorb_short_cycles: end anchor out of sync");
        int twin = twins.twin_of_step[static_cast<std::size_t>(s)];
        bool done = false;
        if (twin >= 0 && !used[static_cast<std::size_t>(twin)]) {
            bool adjacent = true;
            bool ok = try_pair(twin, s, &adjacent);
            used[static_cast<std::size_t>(twin)] = 1;
            if (!adjacent || !ok)
                throw std::logic_error("absorb_short_cycles: reserved pair failed its step");
            ++rep.twin_steps;
            reroute(twin, s);
            done = true;
        } else {
            bool first = true;
            for (int idx : table.per_step[static_cast<std::size_t>(s)]) {
                if (used[static_cast<std::size_t>(idx)] || twins.reserved[static_cast<std::size_t>(idx)])
                    continue;
                bool adjacent = true;
                bool ok = try_pair(idx, s, &adjacent);
                if (!adjacent) {
                    used[static_cast<std::size_t>(idx)] = 1;
                    continue;
                }
                used[static_cast<std::size_t>(idx)] = 1;
                ++rep.order_exposures;
                if (first) {
                    rep.first_order_outcomes.push_back(ok ? 1 : 0);
                    first = false;
                }
                if (ok) {
                    reroute(idx, s);
                    done = true;
                    break;
                }
            }
        }
        if (!done)
            return {std::nullopt,
                    Failure{"phase2", "candidate pool exhausted at step " + std::to_string(s + 1) +
                                          " of " + std::to_string(steps),
                            lp.exposed_count()}};
    }
    return {state.slots, std::nullopt};
}

namespace detail {

inline Graph materialize_host(const Graph& g) { return g; }
inline Graph materialize_host(const CompleteBipartite& g) { return g.materialize(); }

/// One full pipeline pass over a prepared lazy permutation.
template <graph_like Gr>
Phase2Result min_degree_core(const Gr& g, LazyPermutation& lp, const TwoFactor& f_star,
                             const ConstructParams& params, Rng& rng, MinDegReport& rep) {
    const int n = f_star.size();
    const int L = params.L_override.value_or(default_long_threshold(n));
    const int run_len = std::max(1, params.run_len.value_or(default_run_length(n)));

    PathState state;
    auto ph1 = absorb_long_cycles(g, lp, f_star, L, run_len, params.retries, rng, state);
    rep.long_treated = state.long_treated;
    const int budget_cycles = std::max(1, state.long_treated);
    const int default_cap =
        static_cast<int>(std::ceil(8.0 * n / std::log(static_cast<double>(n)))) +
        4 * budget_cycles * run_len;
    rep.exposure_cap = params.exposure_cap.value_or(default_cap);
    auto account = [&]() {
        rep.exposure_count = lp.exposed_count();
        rep.cap_ok = rep.exposure_count <= rep.exposure_cap;
    };
    if (ph1) {
        account();
        return {std::nullopt, std::move(*ph1)};
    }

    std::vector<int> short_ids;
    for (std::size_t ci = 1; ci < f_star.cycles().size(); ++ci)
        if (static_cast<int>(f_star.cycles()[ci].size()) < L) short_ids.push_back(static_cast<int>(ci));
    rep.short_count = static_cast<int>(short_ids.size());

    std::vector<int> anchor_offs;
    std::vector<std::pair<int, int>> anchors;
    for (int ci : short_ids) {
        const auto& cyc = f_star.cycles()[static_cast<std::size_t>(ci)];
        const int m = static_cast<int>(cyc.size());
        int off = rng.below_int(m);
        anchor_offs.push_back(off);
        int av = lp.expose_image(cyc[static_cast<std::size_t>(off)]);
        int bv = lp.expose_image(cyc[static_cast<std::size_t>((off + 1) % m)]);
        anchors.emplace_back(av, bv);
    }

    GoodPairTable table = find_good_pairs(g, state, lp, anchors);
    rep.raw_good_counts = table.raw_counts;
    rep.table_sizes = table.isolated_counts;
    rep.supplemented = table.supplemented;
    for (int s = 0; s <= table.k; ++s) {
        if (table.per_step[static_cast<std::size_t>(s)].empty()) {
            account();
            return {std::nullopt,
                    Failure{"goodpairs", "no candidate pairs for step " + std::to_string(s + 1),
                            rep.exposure_count}};
        }
    }

    TwinAssignment twins = select_twins(table);
    rep.twin_count = twins.size;

    Phase2Result ph2 = absorb_short_cycles(g, state, lp, f_star, short_ids, anchor_offs, table, twins, rep);
    account();
    if (ph2.failure) return ph2;

    if (!rep.cap_ok && !params.exposure_cap && n >= 1000)
        throw std::logic_error("min_degree_core: exposure discipline violated");
    return ph2;
}

inline Certificate slots_to_certificate(const std::vector<int>& cycle_slots, const Permutation& pi) {
    Certificate cert;
    cert.order.reserve(cycle_slots.size());
    for (int s : cycle_slots) cert.order.push_back(pi(s));
    return cert;
}

template <graph_like Gr>
void finish_outcome(const Gr& g, MinDegOutcome& out, const Phase2Result& res, const Permutation& pi,
                    const ConstructParams& params) {
    if (res.cycle_slots) {
        out.certificate = slots_to_certificate(*res.cycle_slots, pi);
        Graph host = union_graph(materialize_host(g), two_factor_graph(out.factor));
        std::string why;
        if (!verify_certificate(host, *out.certificate, &why))
            throw std::logic_error("construct_hamilton_min_degree: invalid certificate: " + why);
    } else {
        out.failure = res.failure;
    }
    if (params.a_size && !out.certificate) {
        int a = *params.a_size;
        if (a < 0 || a > out.factor.size())
            throw std::invalid_argument("construct params: a_size out of range");
        VertexSet av(out.factor.size());
        for (int v = 0; v < a; ++v) av.add(v);
        out.report.witness = bipartite_witness(out.factor, av);
    }
}

} // namespace detail

/// End-to-end randomized pipeline: samples the cycle type, exposes the
/// permutation in stages, and reports either a verified certificate or the
/// stage that gave out. The factor realized by the run is always returned.
template <graph_like Gr>
MinDegOutcome construct_hamilton_min_degree(const Gr& g, Rng& rng, const ConstructParams& params = {}) {
    const int n = g.size();
    if (n < 3) throw std::invalid_argument("construct_hamilton_min_degree: n < 3");
    MinDegOutcome out;
    TwoFactor sampled = sample_two_factor(n, rng);
    TwoFactor f_star = canonical_blocks(sampled.type());
    out.report.n = n;
    out.report.lazy = true;
    out.report.cycle_count = f_star.cycle_count();

    LazyPermutation lp = LazyPermutation::random(n, rng);
    Phase2Result res = detail::min_degree_core(g, lp, f_star, params, rng, out.report);
    lp.materialize();
    Permutation pi = lp.to_permutation();
    out.factor = apply_permutation(pi, f_star);
    detail::finish_outcome(g, out, res, pi, params);
    return out;
}

/// Deterministic alignment of a concrete factor onto the canonical blocks:
/// cycles matched by descending length (ties by smallest vertex), canonical
/// rotations on both sides.
inline Permutation alignment_permutation(const TwoFactor& f) {
    TwoFactor blocks = canonical_blocks(f.type());
    std::vector<int> order(f.cycles().size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        const auto& cx = f.cycles()[static_cast<std::size_t>(x)];
        const auto& cy = f.cycles()[static_cast<std::size_t>(y)];
        if (cx.size() != cy.size()) return cx.size() > cy.size();
        return cx.front() < cy.front();
    });
    std::vector<int> img(static_cast<std::size_t>(f.size()), -1);
    for (std::size_t c = 0; c < order.size(); ++c) {
        const auto& bc = blocks.cycles()[c];
        const auto& fc = f.cycles()[static_cast<std::size_t>(order[c])];
        assert(bc.size() == fc.size());
        for (std::size_t j = 0; j < bc.size(); ++j) img[static_cast<std::size_t>(bc[j])] = fc[j];
    }
    return Permutation(std::move(img));
}

/// Same pipeline against a given factor: exposure is simulated against the
/// aligned truth, so order resolutions read reality instead of coins. Up to
/// re_runs schedules are tried; optionally a rotation-extension rescue runs
/// on the union graph afterwards.
template <graph_like Gr>
MinDegOutcome construct_hamilton_min_degree_fixed(const Gr& g, const TwoFactor& f, Rng& rng,
                                                  const ConstructParams& params = {}) {
    if (g.size() != f.size())
        throw std::invalid_argument("construct_hamilton_min_degree_fixed: size mismatch");
    MinDegOutcome out;
    out.factor = f;
    TwoFactor f_star = canonical_blocks(f.type());
    Permutation pi = alignment_permutation(f);

    const int tries = std::max(1, params.re_runs);
    Phase2Result res;
    for (int r = 0; r < tries; ++r) {
        MinDegReport rep;
        rep.n = f.size();
        rep.lazy = false;
        rep.cycle_count = f_star.cycle_count();
        rep.runs_used = r + 1;
        LazyPermutation lp = LazyPermutation::fixed(pi);
        res = detail::min_degree_core(g, lp, f_star, params, rng, rep);
        out.report = rep;
        if (res.cycle_slots) break;
    }
    detail::finish_outcome(g, out, res, pi, params);

    if (!out.certificate && params.fallback) {
        Graph host = union_graph(detail::materialize_host(g), two_factor_graph(f));
        PosaOutcome po = posa_fallback(host, rng, params.fallback_budget);
        out.report.fallback_used = true;
        if (po.certificate) {
            out.certificate = po.certificate;
            out.failure.reset();
        }
    }
    return out;
}

} // namespace hamperturb
