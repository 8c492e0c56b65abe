#pragma once

// Seeded generators for test corpora: small random connected multigraphs
// (loops and parallels included), wheel graphs with their embeddings,
// random minors of grids, and random guillotine dissections. Everything
// draws from a caller-owned mt19937_64 so runs are reproducible.

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "multigraph.hpp"
#include "planar_dual.hpp"
#include "squaring.hpp"
#include "treecount.hpp"

namespace treekit {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Connected multigraph with 1..max_vertices vertices and at most
/// max_edges edges: a random spanning tree plus random extra edges,
/// where extras may be loops or parallels.
inline Multigraph random_connected_multigraph(Rng& rng, int max_vertices = 8, int max_edges = 12) {
    const int m = uniform_int(rng, 1, max_vertices);
    std::vector<Edge> edges;

    std::vector<VertexId> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 1; i < m; ++i) {
        const VertexId a = order[static_cast<std::size_t>(i)];
        const VertexId b = order[static_cast<std::size_t>(uniform_int(rng, 0, i - 1))];
        if (uniform_int(rng, 0, 1))
            edges.push_back(Edge{a, b});
        else
            edges.push_back(Edge{b, a});
    }

    const int lo = std::max(m == 1 ? 1 : 0, 0);
    const int extra = uniform_int(rng, lo, std::max(lo, max_edges - m + 1));
    for (int i = 0; i < extra && static_cast<int>(edges.size()) < max_edges; ++i) {
        const VertexId a = uniform_int(rng, 1, m);
        const VertexId b = uniform_int(rng, 1, m);  // a == b makes a loop
        edges.push_back(Edge{a, b});
    }

    // Shuffle edge indices so tree edges are not always first.
    std::shuffle(edges.begin(), edges.end(), rng);
    return Multigraph(m, std::move(edges));
}

inline std::vector<int> random_permutation(Rng& rng, int size) {
    std::vector<int> p(static_cast<std::size_t>(size));
    std::iota(p.begin(), p.end(), 1);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

inline SpanningTree random_spanning_tree(const Multigraph& g, Rng& rng) {
    std::vector<EdgeId> order(static_cast<std::size_t>(g.edge_count()));
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    return spanning_tree_from_order(g, order);
}

/// Wheel with k >= 3 spokes: hub = vertex 1, rim 2..k+1 counterclockwise;
/// spokes first (hub outward), then rim edges. The returned rotation
/// system is the standard planar one.
inline EmbeddedGraph wheel_graph(int k) {
    if (k < 3) throw std::invalid_argument("wheel_graph: need at least 3 spokes");
    std::vector<Edge> edges;
    for (int i = 1; i <= k; ++i) edges.push_back(Edge{1, i + 1});               // spoke i
    for (int i = 1; i <= k; ++i) edges.push_back(Edge{i + 1, i == k ? 2 : i + 2});  // rim i

    std::vector<std::vector<Dart>> rot(static_cast<std::size_t>(k + 1));
    for (int i = 1; i <= k; ++i) rot[0].push_back(Dart{i, false});  // hub: spokes ccw
    for (int i = 1; i <= k; ++i) {
        auto& list = rot[static_cast<std::size_t>(i)];  // rim vertex i+1
        const EdgeId to_prev = i == 1 ? 2 * k : k + i - 1;
        const EdgeId to_next = k + i;
        list.push_back(Dart{i, true});        // spoke, arriving from the hub
        list.push_back(Dart{to_prev, true});  // rim edge from the previous rim vertex
        list.push_back(Dart{to_next, false}); // rim edge toward the next
    }
    return EmbeddedGraph{Multigraph(k + 1, std::move(edges)), PlanarEmbedding(std::move(rot))};
}

/// Random minor of the k-grid: a run of random contractions and
/// connectivity-preserving deletions. Minors of planar graphs stay
/// planar, so these are tau-bound fodder.
inline Multigraph random_grid_minor(Rng& rng, int k, int ops = 10) {
    Multigraph g = grid_graph(k).graph;
    for (int i = 0; i < ops; ++i) {
        if (g.edge_count() == 0) break;
        const EdgeId e = uniform_int(rng, 1, g.edge_count());
        if (uniform_int(rng, 0, 1)) {
            if (!g.is_loop(e)) {
                g = contract_edge(g, e);
                continue;
            }
        }
        Multigraph del = delete_edge(g, e);
        if (is_connected(del)) g = std::move(del);
    }
    return g;
}

namespace detail {

inline void guillotine_split(Rng& rng, Dissection& d, const Rect& r, int depth) {
    const bool can_v = r.w >= 2, can_h = r.h >= 2;
    const bool stop = depth <= 0 || (!can_v && !can_h) || uniform_int(rng, 0, 3) == 0;
    if (stop) {
        d.tiles.push_back(r);
        return;
    }
    bool vertical;  // cut parallel to the y axis
    if (can_v && can_h)
        vertical = uniform_int(rng, 0, 1) == 1;
    else
        vertical = can_v;
    if (vertical) {
        const long long cut = uniform_int(rng, 1, static_cast<int>(r.w) - 1);
        guillotine_split(rng, d, Rect{r.x, r.y, cut, r.h}, depth - 1);
        guillotine_split(rng, d, Rect{r.x + cut, r.y, r.w - cut, r.h}, depth - 1);
    } else {
        const long long cut = uniform_int(rng, 1, static_cast<int>(r.h) - 1);
        guillotine_split(rng, d, Rect{r.x, r.y, r.w, cut}, depth - 1);
        guillotine_split(rng, d, Rect{r.x, r.y + cut, r.w, r.h - cut}, depth - 1);
    }
}

}  // namespace detail

/// Random guillotine dissection of a random W x H rectangle: recursive
/// straight cuts at integer offsets. Valid by construction.
inline Dissection random_guillotine(Rng& rng, int max_side = 40, int max_depth = 4) {
    Dissection d;
    d.W = uniform_int(rng, 2, max_side);
    d.H = uniform_int(rng, 2, max_side);
    detail::guillotine_split(rng, d, Rect{0, 0, d.W, d.H}, max_depth);
    return d;
}

/// Random pair (a, b), 1 <= b <= a <= max_value, with gcd(a, b) = 1.
inline std::pair<long long, long long> random_coprime_pair(Rng& rng, int max_value = 200) {
    for (;;) {
        long long a = uniform_int(rng, 1, max_value);
        long long b = uniform_int(rng, 1, max_value);
        if (std::gcd(a, b) != 1) continue;
        if (b > a) std::swap(a, b);
        return {a, b};
    }
}

}  // namespace treekit
