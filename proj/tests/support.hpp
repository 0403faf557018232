#pragma once

// Test-side oracles, deliberately independent of the library internals:
// plain backtracking, union-find, and direct image-table walks.

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamperturb/graph.hpp"

namespace testsupport {

using hamperturb::Graph;

/// Exhaustive backtracking Hamiltonian cycle search anchored at vertex 0;
/// returns the cycle if one exists. Only for n around 8 and below.
inline bool brute_force_hamilton(const Graph& g, std::vector<int>* cycle_out = nullptr) {
    const int n = g.size();
    if (n < 3) return false;
    std::vector<int> path{0};
    std::vector<std::uint8_t> used(static_cast<std::size_t>(n), 0);
    used[0] = 1;

    auto extend = [&](auto&& self) -> bool {
        if (static_cast<int>(path.size()) == n)
            return g.has_edge(path.back(), 0);
        for (int w : g.neighbors(path.back())) {
            if (used[static_cast<std::size_t>(w)]) continue;
            used[static_cast<std::size_t>(w)] = 1;
            path.push_back(w);
            if (self(self)) return true;
            path.pop_back();
            used[static_cast<std::size_t>(w)] = 0;
        }
        return false;
    };
    bool found = extend(extend);
    if (found && cycle_out) *cycle_out = path;
    return found;
}

/// Connected component count of the subgraph induced on `keep`.
inline int components_within(const Graph& g, const std::vector<std::uint8_t>& keep) {
    const int n = g.size();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    for (auto [u, v] : g.edges())
        if (keep[static_cast<std::size_t>(u)] && keep[static_cast<std::size_t>(v)]) {
            int ru = find(u), rv = find(v);
            if (ru != rv) parent[static_cast<std::size_t>(ru)] = rv;
        }
    int comps = 0;
    for (int v = 0; v < n; ++v)
        if (keep[static_cast<std::size_t>(v)] && find(v) == v) ++comps;
    return comps;
}

/// Cycle decomposition straight off an image table.
inline std::vector<std::vector<int>> image_cycles(const std::vector<int>& img) {
    const int n = static_cast<int>(img.size());
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<int> c;
        int v = s;
        do {
            seen[static_cast<std::size_t>(v)] = 1;
            c.push_back(v);
            v = img[static_cast<std::size_t>(v)];
        } while (v != s);
        out.push_back(std::move(c));
    }
    return out;
}

/// Direct audit of a harvested sequence's defining edges, done without the
/// interval: the head must reach the first successor, each element the next
/// successor, and the closing endpoint the last element.
template <class G, class Seq>
bool sequence_edges_ok(const G& g, const Seq& s) {
    const int ell = static_cast<int>(s.elems.size());
    if (ell < 1 || s.succs.size() != s.elems.size()) return false;
    if (!g.has_edge(s.x, s.succs.front())) return false;
    for (int j = 0; j + 1 < ell; ++j)
        if (!g.has_edge(s.elems[static_cast<std::size_t>(j)],
                        s.succs[static_cast<std::size_t>(j) + 1]))
            return false;
    return g.has_edge(s.y, s.elems.back());
}

inline Graph petersen() {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < 5; ++i) {
        es.emplace_back(i, (i + 1) % 5);
        es.emplace_back(5 + i, 5 + (i + 2) % 5);
        es.emplace_back(i, 5 + i);
    }
    return Graph::from_edges(10, es);
}

inline Graph path_graph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int v = 0; v + 1 < n; ++v) es.emplace_back(v, v + 1);
    return Graph::from_edges(n, es);
}

/// Runs a shell command, captures stdout, returns the exit code.
inline int run_capture(const std::string& cmd, std::string* out) {
    if (out) out->clear();
    FILE* p = ::popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!p) throw std::runtime_error("popen failed: " + cmd);
    std::array<char, 4096> buf;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), p))
        if (out) out->append(buf.data(), got);
    int status = ::pclose(p);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path);
}

} // namespace testsupport
