#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "core.hpp"
#include "graph.hpp"

namespace hamperturb {

/// Bijection on {0..n-1}, stored as the image table.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
        std::vector<std::uint8_t> seen(img_.size(), 0);
        for (int v : img_) {
            if (v < 0 || v >= static_cast<int>(img_.size()) || seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("Permutation: images are not a bijection");
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return img_; }

private:
    std::vector<int> img_;
};

/// Fisher-Yates from an explicit stream.
inline Permutation sample_uniform(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_uniform: n must be positive");
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        int j = rng.below_int(i + 1);
        std::swap(img[static_cast<std::size_t>(i)], img[static_cast<std::size_t>(j)]);
    }
    return Permutation(std::move(img));
}

/// Orbits of a permutation. Each cycle starts at its smallest element;
/// cycles are ordered by smallest element.
class CycleStructure {
public:
    explicit CycleStructure(const Permutation& p) : n_(p.size()) {
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(n_), 0);
        for (int s = 0; s < n_; ++s) {
            if (seen[static_cast<std::size_t>(s)]) continue;
            std::vector<int> cyc;
            int v = s;
            do {
                seen[static_cast<std::size_t>(v)] = 1;
                cyc.push_back(v);
                v = p(v);
            } while (v != s);
            cycles_.push_back(std::move(cyc));
        }
    }

    int size() const { return n_; }
    const std::vector<std::vector<int>>& cycles() const { return cycles_; }

    /// Lengths sorted descending.
    std::vector<int> type() const {
        std::vector<int> t;
        t.reserve(cycles_.size());
        for (const auto& c : cycles_) t.push_back(static_cast<int>(c.size()));
        std::sort(t.rbegin(), t.rend());
        return t;
    }

    int cycle_count_upto(int t) const {
        int k = 0;
        for (const auto& c : cycles_)
            if (static_cast<int>(c.size()) <= t) ++k;
        return k;
    }

    int longest_cycle() const {
        int best = 0;
        for (const auto& c : cycles_) best = std::max(best, static_cast<int>(c.size()));
        return best;
    }

    /// Length of the cycle through `v`.
    int containing_cycle_length(int v) const {
        for (const auto& c : cycles_)
            if (std::find(c.begin(), c.end(), v) != c.end()) return static_cast<int>(c.size());
        throw std::invalid_argument("containing_cycle_length: vertex out of range");
    }

private:
    int n_;
    std::vector<std::vector<int>> cycles_;
};

/// Disjoint cycles covering {0..n-1}, every cycle of length >= 3. Canonical
/// form: each cycle rotated to start at its smallest vertex, oriented so the
/// second vertex is the smaller neighbor, cycles sorted by first vertex.
class TwoFactor {
public:
    TwoFactor() : n_(0) {}

    TwoFactor(int n, std::vector<std::vector<int>> cycles) : n_(n), cycles_(std::move(cycles)) {
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
        int covered = 0;
        for (auto& c : cycles_) {
            if (c.size() < 3) throw std::invalid_argument("TwoFactor: cycle shorter than 3");
            for (int v : c) {
                if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
                    throw std::invalid_argument("TwoFactor: cycles are not a partition");
                seen[static_cast<std::size_t>(v)] = 1;
            }
            covered += static_cast<int>(c.size());
            canonicalize_cycle(c);
        }
        if (covered != n) throw std::invalid_argument("TwoFactor: cycles do not cover the vertex set");
        std::sort(cycles_.begin(), cycles_.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    }

    int size() const { return n_; }
    const std::vector<std::vector<int>>& cycles() const { return cycles_; }
    int cycle_count() const { return static_cast<int>(cycles_.size()); }

    std::vector<int> type() const {
        std::vector<int> t;
        t.reserve(cycles_.size());
        for (const auto& c : cycles_) t.push_back(static_cast<int>(c.size()));
        std::sort(t.rbegin(), t.rend());
        return t;
    }

    int cycle_count_upto(int t) const {
        int k = 0;
        for (const auto& c : cycles_)
            if (static_cast<int>(c.size()) <= t) ++k;
        return k;
    }

    int longest_cycle() const {
        int best = 0;
        for (const auto& c : cycles_) best = std::max(best, static_cast<int>(c.size()));
        return best;
    }

    bool operator==(const TwoFactor& other) const {
        return n_ == other.n_ && cycles_ == other.cycles_;
    }

private:
    static void canonicalize_cycle(std::vector<int>& c) {
        auto it = std::min_element(c.begin(), c.end());
        std::rotate(c.begin(), it, c.end());
        if (c.size() >= 3 && c[1] > c.back()) std::reverse(c.begin() + 1, c.end());
    }

    int n_;
    std::vector<std::vector<int>> cycles_;
};

/// Uniform 2-regular graph on [n]: a uniform permutation conditioned on having
/// no cycle of length 1 or 2, taken by rejection. Acceptance tends to
/// e^{-3/2}, so the attempt cap is effectively unreachable.
inline TwoFactor sample_two_factor(int n, Rng& rng, int max_attempts = 10000) {
    if (n < 3) throw std::invalid_argument("sample_two_factor: n < 3");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Permutation p = sample_uniform(n, rng);
        CycleStructure cs(p);
        bool ok = true;
        for (const auto& c : cs.cycles())
            if (c.size() < 3) { ok = false; break; }
        if (ok) return TwoFactor(n, cs.cycles());
    }
    throw std::runtime_error("sample_two_factor: rejection cap exceeded");
}

/// The aligned factor for a given cycle type: lengths sorted descending,
/// cycles laid out as consecutive integer blocks starting at 0. Every factor
/// with this type is a relabeling of it.
inline TwoFactor canonical_blocks(std::vector<int> type) {
    std::sort(type.rbegin(), type.rend());
    std::vector<std::vector<int>> cycles;
    cycles.reserve(type.size());
    int next = 0;
    for (int len : type) {
        std::vector<int> c(static_cast<std::size_t>(len));
        std::iota(c.begin(), c.end(), next);
        next += len;
        cycles.push_back(std::move(c));
    }
    return TwoFactor(next, std::move(cycles));
}

/// Relabels every vertex v of the factor to p(v). Cycle lengths are
/// preserved; the result is re-canonicalized.
inline TwoFactor apply_permutation(const Permutation& p, const TwoFactor& f) {
    if (p.size() != f.size()) throw std::invalid_argument("apply_permutation: size mismatch");
    std::vector<std::vector<int>> cycles;
    cycles.reserve(f.cycles().size());
    for (const auto& c : f.cycles()) {
        std::vector<int> nc;
        nc.reserve(c.size());
        for (int v : c) nc.push_back(p(v));
        cycles.push_back(std::move(nc));
    }
    return TwoFactor(f.size(), std::move(cycles));
}

/// The factor as an ordinary graph.
inline Graph two_factor_graph(const TwoFactor& f) {
    std::vector<std::pair<int, int>> es;
    es.reserve(static_cast<std::size_t>(f.size()));
    for (const auto& c : f.cycles()) {
        for (std::size_t i = 0; i < c.size(); ++i)
            es.emplace_back(c[i], c[(i + 1) % c.size()]);
    }
    return Graph::from_edges(f.size(), es);
}

/// Connected components of F restricted to B. Walking each cycle once:
/// a cycle fully inside B is one component; otherwise each maximal B-run
/// (entered from outside B) is one.
inline int count_components_within(const TwoFactor& f, const VertexSet& b) {
    int components = 0;
    for (const auto& c : f.cycles()) {
        const std::size_t len = c.size();
        std::size_t inside = 0;
        for (int v : c)
            if (b.contains(v)) ++inside;
        if (inside == 0) continue;
        if (inside == len) {
            ++components;
            continue;
        }
        for (std::size_t i = 0; i < len; ++i) {
            bool cur = b.contains(c[i]);
            bool prev = b.contains(c[(i + len - 1) % len]);
            if (cur && !prev) ++components;
        }
    }
    return components;
}

} // namespace hamperturb
