#pragma once

// Spanning-tree counting and the certified tau^n bound.
//
// Two independent counters live here: the classical Laplacian-minor
// determinant (matrix tree theorem) and the deletion-contraction
// recursion t(G) = t(G\e) + t(G/e) with loop / parallel-pair / bridge
// reductions. The third route, the edgewise determinant eta, lives in
// kirchhoff.hpp.
//
// Convention: t(G) = 0 for disconnected G. The per-component product
// is exposed separately as component_tree_product.

#include <cmath>
#include <cstddef>
#include <future>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "exact.hpp"
#include "multigraph.hpp"
#include "planar_dual.hpp"

namespace treekit {

using TreeCount = BigInt;

/// Exact spanning-tree count: integer determinant of the Laplacian with
/// the last row/column removed. Loops are ignored, parallel edges add
/// multiplicity. Disconnected graphs give 0.
inline TreeCount count_matrix_tree(const Multigraph& g) {
    const int m = g.vertex_count();
    if (m <= 1) return 1;
    IntMatrix lap(static_cast<std::size_t>(m - 1), std::vector<BigInt>(static_cast<std::size_t>(m - 1), 0));
    for (const Edge& e : g.edges()) {
        if (e.tail == e.head) continue;
        const int a = e.tail - 1, b = e.head - 1;
        if (a < m - 1) lap[a][a] += 1;
        if (b < m - 1) lap[b][b] += 1;
        if (a < m - 1 && b < m - 1) {
            lap[a][b] -= 1;
            lap[b][a] -= 1;
        }
    }
    return det_bareiss(std::move(lap));
}

namespace detail {

inline bool is_bridge(const Multigraph& g, EdgeId e) {
    return !is_connected(delete_edge(g, e));
}

/// Lowest-index parallel pair, or (0,0).
inline std::pair<EdgeId, EdgeId> find_parallel_pair(const Multigraph& g) {
    for (EdgeId i = 1; i <= g.edge_count(); ++i) {
        const Edge& a = g.edge(i);
        if (a.tail == a.head) continue;
        for (EdgeId j = i + 1; j <= g.edge_count(); ++j) {
            const Edge& b = g.edge(j);
            if ((a.tail == b.tail && a.head == b.head) ||
                (a.tail == b.head && a.head == b.tail))
                return {i, j};
        }
    }
    return {0, 0};
}

inline TreeCount count_dc_rec(Multigraph g, int parallel_depth) {
    g = remove_loops(g);
    if (!is_connected(g)) return 0;
    if (g.edge_count() == 0) return g.vertex_count() == 1 ? 1 : 0;

    // Contract bridges eagerly: every spanning tree contains them.
    for (EdgeId e = 1; e <= g.edge_count(); ++e) {
        if (is_bridge(g, e)) return count_dc_rec(contract_edge(g, e), parallel_depth);
    }

    // Parallel pair: t = t(G \ {e',e''}) + 2 t(G with the pair contracted).
    const auto [p1, p2] = find_parallel_pair(g);
    if (p1 != 0) {
        const TreeCount without = count_dc_rec(delete_edges(g, {p1, p2}), parallel_depth);
        const TreeCount merged = count_dc_rec(remove_loops(contract_edge(g, p1)), parallel_depth);
        return without + 2 * merged;
    }

    // Pivot on the lowest-index edge (no loops or bridges remain).
    const EdgeId pivot = 1;
    Multigraph del = delete_edge(g, pivot);
    Multigraph con = contract_edge(g, pivot);
    if (parallel_depth > 0) {
        auto fut = std::async(std::launch::async, count_dc_rec, std::move(del),
                              parallel_depth - 1);
        const TreeCount c = count_dc_rec(std::move(con), parallel_depth - 1);
        return fut.get() + c;
    }
    return count_dc_rec(std::move(del), 0) + count_dc_rec(std::move(con), 0);
}

}  // namespace detail

/// Deletion-contraction count with loop, parallel-pair, and bridge
/// reductions. `jobs` > 1 evaluates recursion branches concurrently; the
/// result is the same exact integer either way.
inline TreeCount count_deletion_contraction(const Multigraph& g, int jobs = 1) {
    int depth = 0;
    while ((1 << depth) < jobs) ++depth;
    return detail::count_dc_rec(g, depth);
}

/// Product of per-component spanning-tree counts. Equals t(G) when G is
/// connected; differs from the t = 0 convention otherwise.
inline BigInt component_tree_product(const Multigraph& g) {
    const auto comp = components(g);
    const int k = component_count(g);
    BigInt product = 1;
    for (int c = 0; c < k; ++c) {
        std::vector<VertexId> remap(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
        int local_m = 0;
        for (VertexId v = 1; v <= g.vertex_count(); ++v)
            if (comp[static_cast<std::size_t>(v - 1)] == c) remap[static_cast<std::size_t>(v)] = ++local_m;
        std::vector<Edge> local_edges;
        for (const Edge& e : g.edges()) {
            if (comp[static_cast<std::size_t>(e.tail - 1)] != c) continue;
            local_edges.push_back(Edge{remap[static_cast<std::size_t>(e.tail)],
                                       remap[static_cast<std::size_t>(e.head)]});
        }
        product *= count_matrix_tree(Multigraph(local_m, std::move(local_edges)));
    }
    return product;
}

// --- tau, the real root of x^3 - x^2 - 3 -----------------------------------

/// Shrinking rational enclosure of tau ~ 1.8637065, the largest real root
/// of x^3 - x^2 - 3 = 0. Both bounds stay certified at every refinement:
/// lo^3 - lo^2 - 3 < 0 < hi^3 - hi^2 - 3.
class TauInterval {
public:
    TauInterval() : lo_(1), hi_(2) {}

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }

    /// One bisection step.
    void refine() {
        const Rational mid = (lo_ + hi_) / 2;
        if (defect(mid) < 0)
            lo_ = mid;
        else
            hi_ = mid;
    }

    void refine_to_width(const Rational& bound) {
        if (bound <= 0) throw std::invalid_argument("TauInterval: width bound must be positive");
        while (width() > bound) refine();
    }

    /// x^3 - x^2 - 3; negative left of tau, positive right of it.
    static Rational defect(const Rational& x) { return x * x * x - x * x - 3; }

private:
    Rational lo_, hi_;
};

inline TauInterval tau_interval(const Rational& width_bound) {
    TauInterval t;
    t.refine_to_width(width_bound);
    return t;
}

/// Certified verdict for t(G) <= tau^n. The comparison that settled it is
/// kept: holds was certified by t <= lo^n, failure by t >= hi^n.
struct BoundVerdict {
    bool holds = false;
    int n = 0;
    TreeCount tree_count;
    Rational certified_power;  // lo^n when holds, hi^n otherwise
    Rational lo, hi;           // interval in force at the decision
};

/// Decides t(G) <= tau^n using exact rational interval powers only,
/// refining the enclosure until one side is certain. Terminates because
/// tau^n is irrational for n >= 1 while t is an integer.
inline BoundVerdict check_tau_bound(const Multigraph& g, TauInterval interval = TauInterval()) {
    BoundVerdict v;
    v.n = g.edge_count();
    v.tree_count = count_matrix_tree(g);
    if (v.n == 0) {
        v.holds = v.tree_count <= 1;
        v.certified_power = 1;
        v.lo = interval.lo();
        v.hi = interval.hi();
        return v;
    }
    const unsigned long n = static_cast<unsigned long>(v.n);
    for (;;) {
        const Rational lo_pow = rational_pow(interval.lo(), n);
        if (Rational(v.tree_count) <= lo_pow) {
            v.holds = true;
            v.certified_power = lo_pow;
            break;
        }
        const Rational hi_pow = rational_pow(interval.hi(), n);
        if (Rational(v.tree_count) >= hi_pow) {
            v.holds = false;
            v.certified_power = hi_pow;
            break;
        }
        interval.refine();
    }
    v.lo = interval.lo();
    v.hi = interval.hi();
    return v;
}

/// Smallest integer k with tau^k >= x (i.e. ceil(log_tau x) for x > 1),
/// certified by interval powers. x must be positive.
inline int min_tau_exponent(const Rational& x, TauInterval interval = TauInterval()) {
    if (x <= 0) throw std::invalid_argument("min_tau_exponent: x must be positive");
    if (x <= 1) return 0;
    for (int k = 1;; ++k) {
        for (;;) {
            if (rational_pow(interval.lo(), static_cast<unsigned long>(k)) >= x) return k;
            if (rational_pow(interval.hi(), static_cast<unsigned long>(k)) <= x) break;
            interval.refine();
        }
    }
}

// --- grids and the entropy probe --------------------------------------------

struct EmbeddedGraph {
    Multigraph graph;
    PlanarEmbedding embedding;
};

/// k x k-cell grid: (k+1)^2 vertices in row-major order, 2k(k+1) edges
/// (all horizontals row by row, then all verticals), with the canonical
/// counterclockwise rotation system.
inline EmbeddedGraph grid_graph(int k) {
    if (k < 1) throw std::invalid_argument("grid_graph: k must be positive");
    const int side = k + 1;
    auto vid = [side](int r, int c) { return r * side + c + 1; };

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(2 * k * side));
    // Horizontal edges, row-major, oriented left to right.
    std::vector<std::vector<EdgeId>> hor(static_cast<std::size_t>(side),
                                         std::vector<EdgeId>(static_cast<std::size_t>(k), 0));
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < k; ++c) {
            edges.push_back(Edge{vid(r, c), vid(r, c + 1)});
            hor[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                static_cast<EdgeId>(edges.size());
        }
    // Vertical edges, row-major, oriented top to bottom.
    std::vector<std::vector<EdgeId>> ver(static_cast<std::size_t>(k),
                                         std::vector<EdgeId>(static_cast<std::size_t>(side), 0));
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < side; ++c) {
            edges.push_back(Edge{vid(r, c), vid(r + 1, c)});
            ver[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                static_cast<EdgeId>(edges.size());
        }

    // Rotation at (r,c): east, north, west, south (counterclockwise with
    // rows drawn downward).
    std::vector<std::vector<Dart>> rot(static_cast<std::size_t>(side * side));
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c) {
            auto& list = rot[static_cast<std::size_t>(vid(r, c) - 1)];
            if (c < k) list.push_back(Dart{hor[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], false});
            if (r > 0) list.push_back(Dart{ver[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c)], true});
            if (c > 0) list.push_back(Dart{hor[static_cast<std::size_t>(r)][static_cast<std::size_t>(c - 1)], true});
            if (r < k) list.push_back(Dart{ver[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], false});
        }

    return EmbeddedGraph{Multigraph(side * side, std::move(edges)),
                         PlanarEmbedding(std::move(rot))};
}

/// Catalan constant, stored to the 13 digits the entropy probe reports.
inline constexpr double kCatalanConstant = 0.9159655941772;

/// Conjectured growth-rate ceiling (1/n) ln t = 2C/pi ~ 0.5831218.
inline double entropy_limit() { return 2.0 * kCatalanConstant / std::numbers::pi; }

struct GridEntropyRow {
    int k = 0;
    int n = 0;
    TreeCount tree_count;
    double ratio = 0.0;  // (1/n) ln t(R_k)
    double limit = 0.0;  // 2C/pi
};

/// Exact grid count plus the normalized log. k is capped (default 8) to
/// keep exact counting at desk scale.
inline GridEntropyRow grid_entropy(int k, int cutoff = 8) {
    if (k < 1) throw std::invalid_argument("grid_entropy: k must be positive");
    if (k > cutoff) throw std::invalid_argument("grid_entropy: k exceeds cutoff");
    GridEntropyRow row;
    row.k = k;
    const EmbeddedGraph grid = grid_graph(k);
    row.n = grid.graph.edge_count();
    row.tree_count = count_matrix_tree(grid.graph);
    row.ratio = log_bigint(row.tree_count) / static_cast<double>(row.n);
    row.limit = entropy_limit();
    return row;
}

}  // namespace treekit
