/*
 * walks.hpp — exact combinatorial moment engine.
 *
 * Canonical closed walks of length k on t vertices are the restricted-growth
 * representatives of isomorphism classes of closed index walks:
 *   (1) c₀ = c_k = 1, (2) {c₀,…,c_k} = {1,…,t},
 *   (3) cᵢ ≤ max(c₀,…,cᵢ₋₁) + 1.
 *
 * Classes:
 *   ZeroedOut   some edge of G(c) crossed exactly once  → zero contribution
 *   TreePair    t = k/2+1, every edge crossed twice     → G(c) is a tree
 *   SubLeading  otherwise (t < k/2+1, edges ≥ twice)    → O(1/n) per class
 *
 * TreePair walks biject with Dyck paths via vertex depth, so |Γ_k| is the
 * Catalan number C_{k/2}; summing the tree-injection sums Σ_F Π(F) over Γ_k
 * and dividing by n predicts ∫xᵏ dEμ up to the vanishing classes.
 *
 * Injection sums are exact via a class-model closed form for the structured
 * profile kinds (entries depend only on index classes, so group injections
 * by class assignment and count with falling factorials), by brute force for
 * small custom cases, and otherwise via an all-maps DP with a certified
 * error bound.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wigner/profile.hpp"

namespace wigner {

struct CanonicalWalk {
    int k = 0;                // length
    int t = 0;                // vertex count
    std::vector<int> seq;     // c₀ … c_k, values in 1..t
};

enum class WalkTag { zeroed_out, tree_pair, sub_leading };

inline const char* to_string(WalkTag tag) {
    switch (tag) {
    case WalkTag::zeroed_out: return "ZeroedOut";
    case WalkTag::tree_pair: return "TreePair";
    case WalkTag::sub_leading: return "SubLeading";
    }
    return "?";
}

struct WalkGraph {
    int t = 0;
    std::vector<std::pair<int, int>> edges; // unique undirected (a ≤ b), 1-based
    std::vector<int> multiplicity;          // crossings of each edge
};

struct WalkClass {
    WalkTag tag;
    WalkGraph graph;
};

struct Tree {
    int t = 0;
    std::vector<std::pair<int, int>> edges; // 1-based vertices
};

struct TreeSumResult {
    double value = 0.0;
    bool exact = true;
    double error_bound = 0.0;
};

namespace detail {

inline void validate_walk(const CanonicalWalk& w) {
    if (w.k < 1 || static_cast<int>(w.seq.size()) != w.k + 1)
        throw std::invalid_argument("CanonicalWalk: length mismatch");
    if (w.seq.front() != 1 || w.seq.back() != 1)
        throw std::invalid_argument("CanonicalWalk: must start and end at 1");
    int seen_max = 0;
    for (int v : w.seq) {
        if (v < 1 || v > seen_max + 1)
            throw std::invalid_argument("CanonicalWalk: restricted growth violated");
        seen_max = std::max(seen_max, v);
    }
    if (seen_max != w.t)
        throw std::invalid_argument("CanonicalWalk: vertex count mismatch");
}

inline bool connected(int t, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(t + 1);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(t + 1, 0);
    std::queue<int> q;
    q.push(1);
    seen[1] = 1;
    int count = 0;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        ++count;
        for (int u : adj[v])
            if (!seen[u]) { seen[u] = 1; q.push(u); }
    }
    return count == t;
}

} // namespace detail

inline WalkGraph walk_graph(const CanonicalWalk& w) {
    std::map<std::pair<int, int>, int> mult;
    for (int s = 1; s <= w.k; ++s) {
        const int a = std::min(w.seq[s - 1], w.seq[s]);
        const int b = std::max(w.seq[s - 1], w.seq[s]);
        ++mult[{a, b}];
    }
    WalkGraph g;
    g.t = w.t;
    for (const auto& [e, m] : mult) {
        g.edges.push_back(e);
        g.multiplicity.push_back(m);
    }
    return g;
}

// Complete, duplicate-free enumeration; result[t−1] holds γ(k,t).
inline std::vector<std::vector<CanonicalWalk>> enumerate_canonical_walks(int k) {
    if (k < 1 || k > 10)
        throw std::invalid_argument("enumerate_canonical_walks: need 1 <= k <= 10");
    std::vector<std::vector<CanonicalWalk>> out(k);
    std::vector<int> seq{1};
    auto rec = [&](auto&& self, int seen_max) -> void {
        const int pos = static_cast<int>(seq.size());
        if (pos == k + 1) {
            out[seen_max - 1].push_back({k, seen_max, seq});
            return;
        }
        const int hi = pos == k ? 1 : std::min(seen_max + 1, k); // close the walk
        for (int v = 1; v <= hi; ++v) {
            seq.push_back(v);
            self(self, std::max(seen_max, v));
            seq.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

inline WalkClass classify_walk(const CanonicalWalk& w) {
    detail::validate_walk(w);
    WalkClass cls;
    cls.graph = walk_graph(w);
    const bool crossed_once =
        std::any_of(cls.graph.multiplicity.begin(), cls.graph.multiplicity.end(),
                    [](int m) { return m == 1; });
    if (crossed_once) {
        cls.tag = WalkTag::zeroed_out;
        return cls;
    }
    if (w.k % 2 == 0 && w.t == w.k / 2 + 1) {
        cls.tag = WalkTag::tree_pair;
        for (auto [a, b] : cls.graph.edges)
            if (a == b) throw std::logic_error("tree_pair walk with a loop");
        for (int m : cls.graph.multiplicity)
            if (m != 2) throw std::logic_error("tree_pair walk with multiplicity != 2");
        if (static_cast<int>(cls.graph.edges.size()) != w.t - 1 ||
            !detail::connected(w.t, cls.graph.edges))
            throw std::logic_error("tree_pair walk whose graph is not a tree");
        return cls;
    }
    if (w.t >= w.k / 2 + 1 && w.k % 2 == 0)
        throw std::logic_error("walk classification: impossible vertex count");
    cls.tag = WalkTag::sub_leading;
    return cls;
}

namespace detail {

inline double falling_factorial(std::int64_t n, int k) {
    double f = 1.0;
    for (int q = 0; q < k; ++q) f *= static_cast<double>(n - q);
    return f;
}

inline void validate_tree(const Tree& tree) {
    if (tree.t < 1) throw std::invalid_argument("tree_injection_sum: empty tree");
    if (static_cast<int>(tree.edges.size()) != tree.t - 1)
        throw std::invalid_argument("tree_injection_sum: not a tree (edge count)");
    for (auto [a, b] : tree.edges) {
        if (a < 1 || b < 1 || a > tree.t || b > tree.t)
            throw std::invalid_argument("tree_injection_sum: vertex out of range");
        if (a == b) throw std::invalid_argument("tree_injection_sum: loop edge");
    }
    std::vector<std::pair<int, int>> edges = tree.edges;
    if (!connected(tree.t, edges))
        throw std::invalid_argument("tree_injection_sum: not connected");
}

// Exact: group injections by vertex-class assignment; within a class the
// images are a falling-factorial count, across classes they are disjoint.
inline double class_model_tree_sum(const Tree& tree,
                                   const VarianceProfile::ClassModel& cm) {
    const int r = static_cast<int>(cm.sizes.size());
    const int t = tree.t;
    std::vector<int> assign(t, 0);
    long double total = 0.0L;
    auto rec = [&](auto&& self, int v) -> void {
        if (v == t) {
            double weight = 1.0;
            for (auto [a, b] : tree.edges) {
                weight *= cm.w(assign[a - 1], assign[b - 1]);
                if (weight == 0.0) return;
            }
            std::vector<int> count(r, 0);
            for (int u = 0; u < t; ++u) ++count[assign[u]];
            double ways = 1.0;
            for (int c = 0; c < r; ++c) ways *= falling_factorial(cm.sizes[c], count[c]);
            total += static_cast<long double>(weight) * ways;
            return;
        }
        for (int c = 0; c < r; ++c) {
            assign[v] = c;
            self(self, v + 1);
        }
    };
    rec(rec, 0);
    return static_cast<double>(total);
}

inline double brute_force_tree_sum(const Tree& tree, const VarianceProfile& p) {
    const int n = p.n();
    const int t = tree.t;
    std::vector<int> image(t, -1);
    std::vector<char> used(n, 0);
    long double total = 0.0L;
    auto rec = [&](auto&& self, int v, double partial) -> void {
        if (v == t) {
            total += partial;
            return;
        }
        for (int i = 0; i < n; ++i) {
            if (used[i]) continue;
            double next = partial;
            for (auto [a, b] : tree.edges) { // edges with both endpoints placed
                const int av = a - 1, bv = b - 1;
                if (av == v && image[bv] >= 0) next *= p(i, image[bv]);
                else if (bv == v && image[av] >= 0) next *= p(image[av], i);
            }
            if (next == 0.0) continue;
            image[v] = i;
            used[i] = 1;
            self(self, v + 1, next);
            used[i] = 0;
            image[v] = -1;
        }
    };
    rec(rec, 0, 1.0);
    return static_cast<double>(total);
}

// All-maps leaf-elimination DP: Σ over arbitrary maps of Π_e σ²; upper
// bounds the injective sum, with collision excess ≤ (t choose 2)·maxσ²·n·C^(t−2).
inline double all_maps_tree_sum(const Tree& tree, const VarianceProfile& p) {
    const int n = p.n();
    const int t = tree.t;
    std::vector<std::vector<int>> children(t);
    std::vector<int> order, parent(t, -1);
    {
        std::vector<std::vector<int>> adj(t);
        for (auto [a, b] : tree.edges) {
            adj[a - 1].push_back(b - 1);
            adj[b - 1].push_back(a - 1);
        }
        std::vector<char> seen(t, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            order.push_back(v);
            for (int u : adj[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    parent[u] = v;
                    children[v].push_back(u);
                    q.push(u);
                }
        }
    }
    std::vector<std::vector<double>> msg(t);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        std::vector<double> prod(n, 1.0);
        for (int c : children[v])
            for (int i = 0; i < n; ++i) prod[i] *= msg[c][i];
        if (parent[v] < 0) {
            long double total = 0.0L;
            for (int i = 0; i < n; ++i) total += prod[i];
            msg[v] = {static_cast<double>(total)};
        } else {
            std::vector<double> up(n, 0.0);
            for (int i = 0; i < n; ++i) {
                long double acc = 0.0L;
                for (int j = 0; j < n; ++j) acc += p(i, j) * prod[j];
                up[i] = static_cast<double>(acc);
            }
            msg[v] = std::move(up);
        }
    }
    return msg[order.front()][0];
}

} // namespace detail

// Σ over injective F: V(T) → {1..n} of Π_{e∈E(T)} σ²_{F(x_e)F(y_e)}.
inline TreeSumResult tree_injection_sum(const Tree& tree,
                                        const VarianceProfile& profile) {
    detail::validate_tree(tree);
    const int n = profile.n();
    const int t = tree.t;
    if (t > n) return {0.0, true, 0.0}; // no injections
    if (t == 1) return {static_cast<double>(n), true, 0.0};

    if (const auto cm = profile.class_model())
        return {detail::class_model_tree_sum(tree, *cm), true, 0.0};

    if (std::pow(static_cast<double>(n), t) <= 1e7)
        return {detail::brute_force_tree_sum(tree, profile), true, 0.0};

    const double value = detail::all_maps_tree_sum(tree, profile);
    const double c = profile.max_row_sum();
    const double bound = 0.5 * t * (t - 1) * profile.max_sigma2() *
                         static_cast<double>(n) * std::pow(c, t - 2);
    return {value, false, bound};
}

inline Tree tree_of(const WalkGraph& g) {
    Tree tr;
    tr.t = g.t;
    tr.edges = g.edges;
    return tr;
}

// (1/n)·Σ_{c ∈ Γ_k} Σ_{F ∈ I(G(c),n)} Π(F): the tree-class prediction of
// ∫xᵏ dEμ. Odd k has no TreePair walks and returns exactly zero.
inline TreeSumResult moment_prediction(const VarianceProfile& profile, int k) {
    if (k < 1 || k > 10)
        throw std::invalid_argument("moment_prediction: need 1 <= k <= 10");
    if (k % 2 == 1) return {0.0, true, 0.0};
    const auto walks = enumerate_canonical_walks(k);
    const double inv_n = 1.0 / static_cast<double>(profile.n());
    TreeSumResult out{0.0, true, 0.0};
    for (const auto& bucket : walks)
        for (const auto& w : bucket) {
            const WalkClass cls = classify_walk(w);
            if (cls.tag != WalkTag::tree_pair) continue;
            const TreeSumResult r = tree_injection_sum(tree_of(cls.graph), profile);
            out.value += r.value * inv_n;
            out.error_bound += r.error_bound * inv_n;
            out.exact = out.exact && r.exact;
        }
    return out;
}

// Contribution of one canonical-walk class to (1/n)·E tr Wᵏ (before the
// 1/n): Σ over labelings ι ∈ L(n,c) of Π over distinct edges of E[w^m].
// Exact for real atomic entry laws.
inline double walk_class_contribution(const EnsembleSpec& spec,
                                      const CanonicalWalk& w) {
    detail::validate_walk(w);
    if (spec.symmetry() != SymmetryClass::real_symmetric)
        throw std::domain_error("exact trace oracle: real ensembles only");
    if (!spec.law.has_exact_power_moments())
        throw std::domain_error("exact trace oracle: law lacks exact power moments");
    const WalkGraph g = walk_graph(w);
    // an edge crossed once contributes the factor E w = 0
    for (int m : g.multiplicity)
        if (m == 1) return 0.0;
    const int n = spec.n();
    const int t = w.t;
    if (t > n) return 0.0;
    std::vector<int> image(t, -1);
    std::vector<char> used(n, 0);
    long double total = 0.0L;
    auto rec = [&](auto&& self, int v) -> void {
        if (v == t) {
            double prod = 1.0;
            for (std::size_t e = 0; e < g.edges.size(); ++e) {
                const auto [a, b] = g.edges[e];
                const int i = image[a - 1], j = image[b - 1];
                const EntryLaw law =
                    i == j ? spec.diagonal_law(i) : spec.entry_law(i, j);
                prod *= law.power_moment(g.multiplicity[e]);
                if (prod == 0.0) return;
            }
            total += prod;
            return;
        }
        for (int i = 0; i < n; ++i) {
            if (used[i]) continue;
            image[v] = i;
            used[i] = 1;
            self(self, v + 1);
            used[i] = 0;
        }
    };
    rec(rec, 0);
    return static_cast<double>(total);
}

// Exact (1/n)·E tr Wᵏ by summing every canonical class over every labeling.
// Ground truth including the SubLeading classes.
inline double exact_trace_moment(const EnsembleSpec& spec, int k) {
    if (k < 1 || k > 8)
        throw std::invalid_argument("exact_trace_moment: need 1 <= k <= 8");
    if (spec.n() > 12)
        throw std::invalid_argument("exact_trace_moment: n > 12");
    long double total = 0.0L;
    for (const auto& bucket : enumerate_canonical_walks(k))
        for (const auto& w : bucket) total += walk_class_contribution(spec, w);
    return static_cast<double>(total / spec.n());
}

// All Dyck paths of length k: x₀ = x_k = 0, |xₛ − xₛ₋₁| = 1, xₛ ≥ 0.
inline std::vector<std::vector<int>> dyck_paths(int k) {
    if (k < 2 || k % 2 != 0 || k > 16)
        throw std::invalid_argument("dyck_paths: need even k with 2 <= k <= 16");
    std::vector<std::vector<int>> out;
    std::vector<int> path{0};
    auto rec = [&](auto&& self) -> void {
        const int pos = static_cast<int>(path.size()) - 1;
        if (pos == k) {
            if (path.back() == 0) out.push_back(path);
            return;
        }
        const int h = path.back();
        const int rem = k - pos; // steps still to take
        if (h + 1 <= rem - 1) {  // room to come back down to zero
            path.push_back(h + 1);
            self(self);
            path.pop_back();
        }
        if (h > 0 && h - 1 <= rem - 1) {
            path.push_back(h - 1);
            self(self);
            path.pop_back();
        }
    };
    rec(rec);
    return out;
}

// D(c) = (x₀,…,x_k) with xₛ the tree distance between c₀ and cₛ in G(c).
inline std::vector<int> dyck_bijection(const CanonicalWalk& w) {
    const WalkClass cls = classify_walk(w);
    if (cls.tag != WalkTag::tree_pair)
        throw std::invalid_argument("dyck_bijection: walk is not TreePair");
    std::vector<std::vector<int>> adj(w.t + 1);
    for (auto [a, b] : cls.graph.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> dist(w.t + 1, -1);
    std::queue<int> q;
    q.push(1);
    dist[1] = 0;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int u : adj[v])
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
    }
    std::vector<int> path;
    path.reserve(w.seq.size());
    for (int v : w.seq) path.push_back(dist[v]);
    return path;
}

} // namespace wigner
