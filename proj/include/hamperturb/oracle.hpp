#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graph.hpp"
#include "permutation.hpp"
#include "result.hpp"

namespace hamperturb {

/// True iff `c` lists every vertex exactly once and consecutive vertices
/// (cyclically) are adjacent in `h`. On rejection, `why` gets a reason.
inline bool verify_certificate(const Graph& h, const Certificate& c, std::string* why = nullptr) {
    auto fail = [&](const std::string& r) {
        if (why) *why = r;
        return false;
    };
    const int n = h.size();
    if (static_cast<int>(c.order.size()) != n)
        return fail("wrong length: " + std::to_string(c.order.size()) + " of " + std::to_string(n));
    if (n < 3) return fail("graph too small for a cycle");
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
    for (int v : c.order) {
        if (v < 0 || v >= n) return fail("vertex out of range: " + std::to_string(v));
        if (seen[static_cast<std::size_t>(v)]) return fail("not a permutation: repeated " + std::to_string(v));
        seen[static_cast<std::size_t>(v)] = 1;
    }
    for (int i = 0; i < n; ++i) {
        int u = c.order[static_cast<std::size_t>(i)];
        int v = c.order[static_cast<std::size_t>((i + 1) % n)];
        if (!h.has_edge(u, v))
            return fail("missing edge " + std::to_string(u) + " " + std::to_string(v));
    }
    if (why) why->clear();
    return true;
}

struct OracleVerdict {
    bool hamiltonian = false;
    std::optional<Certificate> certificate;
};

/// Exact decision by dynamic programming over vertex subsets with endpoint
/// sets: dp[mask] = bitmask of vertices v such that some path starts at 0,
/// covers exactly mask, and ends at v. Memory is 4·2^n bytes, hence the cap.
inline OracleVerdict is_hamiltonian_exact(const Graph& h, int cap = 20) {
    const int n = h.size();
    if (n > cap) throw std::invalid_argument("is_hamiltonian_exact: n exceeds cap");
    OracleVerdict out;
    if (n < 3 || min_degree(h) < 2) return out;

    std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int u : h.neighbors(v)) nbr[static_cast<std::size_t>(v)] |= (1u << u);

    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    std::vector<std::uint32_t> dp(static_cast<std::size_t>(full) + 1, 0);
    dp[1] = 1; // the trivial path at vertex 0
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        if (!(mask & 1)) continue;
        std::uint32_t ends = dp[mask];
        if (!ends) continue;
        std::uint32_t avail = full & ~mask;
        while (avail) {
            std::uint32_t vbit = avail & (~avail + 1);
            avail ^= vbit;
            int v = std::countr_zero(vbit);
            if (nbr[static_cast<std::size_t>(v)] & ends) dp[mask | vbit] |= vbit;
        }
    }
    std::uint32_t closers = dp[full] & nbr[0] & ~1u;
    if (!closers) return out;

    // reconstruct backwards from any end adjacent to 0
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    std::uint32_t mask = full;
    int v = std::countr_zero(closers);
    while (true) {
        order.push_back(v);
        std::uint32_t prev_mask = mask ^ (1u << v);
        if (prev_mask == 1) break;
        std::uint32_t cands = dp[prev_mask] & nbr[static_cast<std::size_t>(v)];
        mask = prev_mask;
        v = std::countr_zero(cands);
    }
    order.push_back(0);
    std::reverse(order.begin(), order.end());
    out.hamiltonian = true;
    out.certificate = Certificate{std::move(order)};
    return out;
}

/// One-sided non-Hamiltonicity witness for a bipartite construction with
/// parts A and B: deleting A from a Hamilton cycle leaves at most |A| pieces
/// on B, so more F-components within B than |A| rules the cycle out whenever
/// B is independent in G and all G-edges cross between A and B.
inline bool bipartite_witness(const TwoFactor& f, const VertexSet& a) {
    if (a.universe() != f.size()) throw std::invalid_argument("bipartite_witness: size mismatch");
    return count_components_within(f, a.complement()) > a.size();
}

} // namespace hamperturb
