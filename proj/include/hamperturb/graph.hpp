#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "core.hpp"

namespace hamperturb {

/// Subset of {0..n-1} with O(1) membership and ordered iteration.
class VertexSet {
public:
    VertexSet() : n_(0) {}
    explicit VertexSet(int n) : n_(n), in_(static_cast<std::size_t>(n), 0) {}

    static VertexSet of(int n, std::vector<int> members) {
        VertexSet s(n);
        for (int v : members) s.add(v);
        return s;
    }

    int universe() const { return n_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }

    bool contains(int v) const { return v >= 0 && v < n_ && in_[static_cast<std::size_t>(v)]; }

    void add(int v) {
        if (v < 0 || v >= n_) throw std::invalid_argument("VertexSet: vertex out of range");
        if (!in_[static_cast<std::size_t>(v)]) {
            in_[static_cast<std::size_t>(v)] = 1;
            members_.push_back(v);
        }
    }

    /// Members in ascending order.
    std::vector<int> sorted() const {
        std::vector<int> out = members_;
        std::sort(out.begin(), out.end());
        return out;
    }

    const std::vector<int>& members() const { return members_; }

    VertexSet complement() const {
        VertexSet s(n_);
        for (int v = 0; v < n_; ++v)
            if (!in_[static_cast<std::size_t>(v)]) s.add(v);
        return s;
    }

private:
    int n_;
    std::vector<std::uint8_t> in_;
    std::vector<int> members_; // insertion order; sorted() for canonical order
};

/// Anything the pipelines can treat as a host graph.
template <class G>
concept graph_like = requires(const G& g, int u, int v) {
    { g.size() } -> std::convertible_to<int>;
    { g.degree(v) } -> std::convertible_to<int>;
    { g.has_edge(u, v) } -> std::convertible_to<bool>;
};

/// Simple undirected graph on vertices 0..n-1, adjacency kept sorted.
class Graph {
public:
    Graph() : n_(0), m_(0) {}
    explicit Graph(int n) : n_(n), m_(0), adj_(static_cast<std::size_t>(n)) {}

    int size() const { return n_; }
    int edge_count() const { return m_; }

    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }

    bool has_edge(int u, int v) const {
        if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
        const auto& a = adj_[static_cast<std::size_t>(u)];
        const auto& b = adj_[static_cast<std::size_t>(v)];
        const auto& s = a.size() <= b.size() ? a : b;
        int t = (&s == &a) ? v : u;
        return std::binary_search(s.begin(), s.end(), t);
    }

    /// Adds {u,v} if absent. Self-loops and out-of-range endpoints are errors.
    void add_edge(int u, int v) {
        check_pair(u, v);
        if (has_edge(u, v)) return;
        insert_sorted(adj_[static_cast<std::size_t>(u)], v);
        insert_sorted(adj_[static_cast<std::size_t>(v)], u);
        ++m_;
    }

    /// Bulk construction; dedups, validates, sorts once.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.check_pair(u, v);
        for (auto [u, v] : edges) {
            g.adj_[static_cast<std::size_t>(u)].push_back(v);
            g.adj_[static_cast<std::size_t>(v)].push_back(u);
        }
        for (auto& a : g.adj_) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        g.m_ = 0;
        for (const auto& a : g.adj_) g.m_ += static_cast<int>(a.size());
        g.m_ /= 2;
        return g;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(m_));
        for (int u = 0; u < n_; ++u)
            for (int v : adj_[static_cast<std::size_t>(u)])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

private:
    void check_pair(int u, int v) const {
        if (u < 0 || v < 0 || u >= n_ || v >= n_)
            throw std::invalid_argument("Graph: endpoint out of range");
        if (u == v) throw std::invalid_argument("Graph: self-loop");
    }

    static void insert_sorted(std::vector<int>& a, int v) {
        a.insert(std::upper_bound(a.begin(), a.end(), v), v);
    }

    int n_;
    int m_;
    std::vector<std::vector<int>> adj_;
};

/// Complete bipartite graph, stored implicitly: A = {0..a-1}, B = {a..n-1}.
/// Lets the bipartite family run at n = 10^6 without materializing ~10^9 edges.
class CompleteBipartite {
public:
    CompleteBipartite(int n, int a_size) : n_(n), a_(a_size) {
        if (a_size <= 0 || a_size >= n) throw std::invalid_argument("CompleteBipartite: need 0 < |A| < n");
    }

    int size() const { return n_; }
    int a_size() const { return a_; }
    bool in_a(int v) const { return v < a_; }
    int degree(int v) const { return v < a_ ? n_ - a_ : a_; }
    bool has_edge(int u, int v) const {
        if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
        return (u < a_) != (v < a_);
    }

    /// Explicit copy; only sensible at small n.
    Graph materialize() const {
        Graph g(n_);
        std::vector<std::pair<int, int>> es;
        es.reserve(static_cast<std::size_t>(a_) * static_cast<std::size_t>(n_ - a_));
        for (int u = 0; u < a_; ++u)
            for (int v = a_; v < n_; ++v) es.emplace_back(u, v);
        return Graph::from_edges(n_, es);
    }

private:
    int n_;
    int a_;
};

template <graph_like G>
int min_degree(const G& g) {
    if (g.size() == 0) throw std::invalid_argument("min_degree: empty graph");
    int best = g.degree(0);
    for (int v = 1; v < g.size(); ++v) best = std::min(best, g.degree(v));
    return best;
}

template <graph_like G>
int max_degree(const G& g) {
    if (g.size() == 0) throw std::invalid_argument("max_degree: empty graph");
    int best = g.degree(0);
    for (int v = 1; v < g.size(); ++v) best = std::max(best, g.degree(v));
    return best;
}

/// N(S) \ S.
inline VertexSet external_neighbourhood(const Graph& g, const VertexSet& s) {
    VertexSet out(g.size());
    for (int v : s.sorted())
        for (int w : g.neighbors(v))
            if (!s.contains(w)) out.add(w);
    return out;
}

/// The barely-subcritical bipartite obstruction: A of size
/// floor((1-eps) * sqrt(n ln n / 2)) joined completely to B.
inline CompleteBipartite lower_bound_graph(int n, double eps) {
    if (n < 2) throw std::invalid_argument("lower_bound_graph: n too small");
    if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("lower_bound_graph: eps must be in (0,1)");
    const double raw = (1.0 - eps) * std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(n)) / 2.0);
    const int a = static_cast<int>(std::floor(raw));
    if (a < 1) throw std::invalid_argument("lower_bound_graph: |A| would be empty at these parameters");
    if (a >= n) throw std::invalid_argument("lower_bound_graph: |A| would exhaust the vertex set");
    return CompleteBipartite(n, a);
}

struct InducedSubgraph {
    Graph g;
    std::vector<int> old_of_new; // new id -> original id
    std::vector<int> new_of_old; // original id -> new id, -1 if deleted
};

/// G - X with surviving vertices relabeled contiguously in ascending order.
inline InducedSubgraph induced_delete(const Graph& g, const VertexSet& x) {
    InducedSubgraph out;
    out.new_of_old.assign(static_cast<std::size_t>(g.size()), -1);
    for (int v = 0; v < g.size(); ++v) {
        if (!x.contains(v)) {
            out.new_of_old[static_cast<std::size_t>(v)] = static_cast<int>(out.old_of_new.size());
            out.old_of_new.push_back(v);
        }
    }
    std::vector<std::pair<int, int>> es;
    for (int v = 0; v < g.size(); ++v) {
        int nv = out.new_of_old[static_cast<std::size_t>(v)];
        if (nv < 0) continue;
        for (int w : g.neighbors(v)) {
            int nw = out.new_of_old[static_cast<std::size_t>(w)];
            if (nw > nv) es.emplace_back(nv, nw);
        }
    }
    out.g = Graph::from_edges(static_cast<int>(out.old_of_new.size()), es);
    return out;
}

inline Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> es;
    es.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return Graph::from_edges(n, es);
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: n < 3");
    std::vector<std::pair<int, int>> es;
    for (int v = 0; v < n; ++v) es.emplace_back(v, (v + 1) % n);
    return Graph::from_edges(n, es);
}

/// G(n, p) by geometric edge skipping; O(m) draws.
inline Graph gnp_graph(int n, double p, Rng& rng) {
    if (!(p >= 0.0) || !(p > 0.0 ? p <= 1.0 : true)) throw std::invalid_argument("gnp_graph: bad p");
    std::vector<std::pair<int, int>> es;
    if (p >= 1.0) return complete_graph(n);
    if (p > 0.0) {
        const double logq = std::log1p(-p);
        std::int64_t total = static_cast<std::int64_t>(n) * (n - 1) / 2;
        std::int64_t idx = -1;
        while (true) {
            double u = rng.unit();
            if (u <= 0.0) u = 0x1.0p-53;
            idx += 1 + static_cast<std::int64_t>(std::floor(std::log(u) / logq));
            if (idx >= total) break;
            // unrank pair: idx-th edge in row-major upper triangle
            std::int64_t lo = 0, hi = n - 1;
            while (lo < hi) {
                std::int64_t mid = (lo + hi + 1) / 2;
                std::int64_t before = mid * (2 * n - mid - 1) / 2;
                if (before <= idx) lo = mid; else hi = mid - 1;
            }
            int u0 = static_cast<int>(lo);
            std::int64_t before = lo * (2 * n - lo - 1) / 2;
            int v0 = static_cast<int>(u0 + 1 + (idx - before));
            es.emplace_back(u0, v0);
        }
    }
    return Graph::from_edges(n, es);
}

/// G(n, d/n) with minimum-degree repair: every vertex short of degree d gets
/// random extra edges until it reaches d. Near-regular, delta(G) >= d.
inline Graph near_regular_graph(int n, int d, Rng& rng) {
    if (d < 0 || d >= n) throw std::invalid_argument("near_regular_graph: need 0 <= d < n");
    Graph g = gnp_graph(n, static_cast<double>(d) / static_cast<double>(n), rng);
    for (int v = 0; v < n; ++v) {
        int guard = 0;
        while (g.degree(v) < d && guard < 64 * n) {
            int w = rng.below_int(n);
            ++guard;
            if (w == v || g.has_edge(v, w)) continue;
            g.add_edge(v, w);
        }
        if (g.degree(v) < d) throw std::runtime_error("near_regular_graph: repair failed");
    }
    return g;
}

/// Disjoint cliques of size >= d+1 covering [n]; min degree d, disconnected.
inline Graph clique_blowup(int n, int d) {
    if (d + 1 > n) throw std::invalid_argument("clique_blowup: d+1 > n");
    int groups = n / (d + 1);
    std::vector<std::pair<int, int>> es;
    int start = 0;
    for (int gidx = 0; gidx < groups; ++gidx) {
        int sz = n / groups + (gidx < n % groups ? 1 : 0);
        for (int i = 0; i < sz; ++i)
            for (int j = i + 1; j < sz; ++j) es.emplace_back(start + i, start + j);
        start += sz;
    }
    return Graph::from_edges(n, es);
}

inline Graph union_graph(const Graph& a, const Graph& b) {
    if (a.size() != b.size()) throw std::invalid_argument("union_graph: size mismatch");
    auto es = a.edges();
    auto eb = b.edges();
    es.insert(es.end(), eb.begin(), eb.end());
    return Graph::from_edges(a.size(), es);
}

} // namespace hamperturb
