#pragma once

#include <vector>

#include "core.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "result.hpp"

namespace hamperturb {

/// Rotation-extension search with random restarts. `budget` caps the total
/// number of extend/rotate/restart operations. Failure says nothing about
/// the graph; it is a search timeout, not a non-Hamiltonicity proof.
inline PosaOutcome posa_fallback(const Graph& h, Rng& rng, long long budget = 1000000) {
    PosaOutcome out;
    const int n = h.size();
    if (n < 3 || min_degree(h) < 2) {
        out.failure = Failure{"posa", "degree precondition rules out any cycle", 0};
        return out;
    }

    std::vector<int> path;
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    std::vector<int> cand;
    path.reserve(static_cast<std::size_t>(n));

    auto restart = [&]() {
        for (int v : path) pos[static_cast<std::size_t>(v)] = -1;
        path.clear();
        int s = rng.below_int(n);
        path.push_back(s);
        pos[static_cast<std::size_t>(s)] = 0;
    };

    restart();
    long long steps = 0;
    long long since_extend = 0;
    const long long stagnation = std::max<long long>(64, 4LL * n);

    while (steps < budget) {
        int end = path.back();

        cand.clear();
        for (int w : h.neighbors(end))
            if (pos[static_cast<std::size_t>(w)] < 0) cand.push_back(w);

        if (!cand.empty()) {
            ++steps;
            since_extend = 0;
            int w = cand[static_cast<std::size_t>(rng.below_int(static_cast<int>(cand.size())))];
            pos[static_cast<std::size_t>(w)] = static_cast<int>(path.size());
            path.push_back(w);
            continue;
        }

        if (static_cast<int>(path.size()) == n && h.has_edge(end, path.front())) {
            out.certificate = Certificate{path};
            out.steps = steps;
            std::string why;
            if (!verify_certificate(h, *out.certificate, &why))
                throw std::logic_error("posa_fallback: produced invalid cycle: " + why);
            return out;
        }

        // rotate about a random in-path neighbor of the end
        cand.clear();
        int end_pos = pos[static_cast<std::size_t>(end)];
        for (int w : h.neighbors(end)) {
            int p = pos[static_cast<std::size_t>(w)];
            if (p >= 0 && p < end_pos - 1) cand.push_back(p);
        }
        ++steps;
        ++since_extend;
        if (cand.empty() || since_extend > stagnation) {
            restart();
            since_extend = 0;
            continue;
        }
        int pivot = cand[static_cast<std::size_t>(rng.below_int(static_cast<int>(cand.size())))];
        std::reverse(path.begin() + pivot + 1, path.end());
        for (int p = pivot + 1; p < static_cast<int>(path.size()); ++p)
            pos[static_cast<std::size_t>(path[static_cast<std::size_t>(p)])] = p;
    }

    out.failure = Failure{"posa", "step budget exhausted", 0};
    out.steps = steps;
    return out;
}

} // namespace hamperturb
