#pragma once

// The edgewise Kirchhoff matrix and the signed determinant eta.
//
// For a connected multigraph G with n edges, a pole S, and a spanning
// tree F, the matrix M_{G,F} is n x n over {-1,0,+1}:
//
//   Type[1] rows, one per vertex u != S: +1 where an edge leaves u,
//   -1 where one enters, 0 on loops and non-incident edges (current law).
//
//   Type[2] rows, one per non-tree edge e: the fundamental cycle of e,
//   traced starting along e's own orientation; +1 on co-oriented edges,
//   -1 on counter-oriented ones (voltage law).
//
// eta(G) = rho * det M with rho = sigma * lambda a product of four
// explicit parities; eta equals the spanning-tree count and is invariant
// under every choice made along the way (pole, tree, row order).

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "exact.hpp"
#include "multigraph.hpp"

namespace treekit {

struct RowLabel {
    enum class Kind { vertex, cycle };
    Kind kind;
    int id;  // vertex id for Type[1], edge id for Type[2]
};

struct EdgewiseMatrix {
    IntMatrix entries;           // square, one column per edge (ascending)
    std::vector<RowLabel> rows;  // Type[1] block then Type[2] block
};

namespace detail {

struct TreeRooting {
    std::vector<EdgeId> parent_edge;     // 1-based by vertex; 0 at the root
    std::vector<VertexId> parent_vertex;
    std::vector<int> depth;
};

inline TreeRooting root_tree(const Multigraph& g, const SpanningTree& tree, VertexId root) {
    const std::size_t m = static_cast<std::size_t>(g.vertex_count());
    TreeRooting r;
    r.parent_edge.assign(m + 1, 0);
    r.parent_vertex.assign(m + 1, 0);
    r.depth.assign(m + 1, -1);
    r.depth[static_cast<std::size_t>(root)] = 0;
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(m + 1);
    for (EdgeId e : tree.edges) {
        const Edge& ed = g.edge(e);
        adj[static_cast<std::size_t>(ed.tail)].push_back({ed.head, e});
        adj[static_cast<std::size_t>(ed.head)].push_back({ed.tail, e});
    }
    std::vector<VertexId> stack{root};
    while (!stack.empty()) {
        const VertexId u = stack.back();
        stack.pop_back();
        for (auto [v, e] : adj[static_cast<std::size_t>(u)]) {
            if (r.depth[static_cast<std::size_t>(v)] >= 0) continue;
            r.depth[static_cast<std::size_t>(v)] = r.depth[static_cast<std::size_t>(u)] + 1;
            r.parent_edge[static_cast<std::size_t>(v)] = e;
            r.parent_vertex[static_cast<std::size_t>(v)] = u;
            stack.push_back(v);
        }
    }
    for (VertexId v = 1; v <= g.vertex_count(); ++v)
        if (r.depth[static_cast<std::size_t>(v)] < 0)
            throw std::invalid_argument("root_tree: tree does not span the graph");
    return r;
}

/// Tree path from -> to as (edge, +1/-1) steps, sign +1 when the edge is
/// traversed tail to head.
inline std::vector<std::pair<EdgeId, int>> tree_path(const Multigraph& g, const TreeRooting& r,
                                                     VertexId from, VertexId to) {
    std::vector<std::pair<EdgeId, int>> up, down;
    VertexId a = from, b = to;
    while (r.depth[static_cast<std::size_t>(a)] > r.depth[static_cast<std::size_t>(b)]) {
        const EdgeId e = r.parent_edge[static_cast<std::size_t>(a)];
        up.push_back({e, g.edge(e).tail == a ? 1 : -1});
        a = r.parent_vertex[static_cast<std::size_t>(a)];
    }
    while (r.depth[static_cast<std::size_t>(b)] > r.depth[static_cast<std::size_t>(a)]) {
        const EdgeId e = r.parent_edge[static_cast<std::size_t>(b)];
        down.push_back({e, g.edge(e).head == b ? 1 : -1});
        b = r.parent_vertex[static_cast<std::size_t>(b)];
    }
    while (a != b) {
        const EdgeId ea = r.parent_edge[static_cast<std::size_t>(a)];
        up.push_back({ea, g.edge(ea).tail == a ? 1 : -1});
        a = r.parent_vertex[static_cast<std::size_t>(a)];
        const EdgeId eb = r.parent_edge[static_cast<std::size_t>(b)];
        down.push_back({eb, g.edge(eb).head == b ? 1 : -1});
        b = r.parent_vertex[static_cast<std::size_t>(b)];
    }
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
}

/// Parity (0/1) of a sequence of distinct values relative to sorted order.
inline int inversion_parity(const std::vector<int>& seq) {
    int inv = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) inv ^= 1;
    return inv;
}

}  // namespace detail

/// Fundamental cycle of non-tree edge e: (e, +1) first, then the tree
/// path from head(e) back to tail(e) with traversal signs.
inline std::vector<std::pair<EdgeId, int>> fundamental_cycle(const Multigraph& g,
                                                             const SpanningTree& tree,
                                                             EdgeId e) {
    if (tree.contains(e)) throw std::invalid_argument("fundamental_cycle: edge lies in the tree");
    const Edge& ed = g.edge(e);
    std::vector<std::pair<EdgeId, int>> cycle{{e, 1}};
    if (ed.tail != ed.head) {
        const detail::TreeRooting r = detail::root_tree(g, tree, ed.tail);
        auto path = detail::tree_path(g, r, ed.head, ed.tail);
        cycle.insert(cycle.end(), path.begin(), path.end());
    }
    return cycle;
}

/// Builds M_{G,F}. `voltage_row_order`, when given, lists every non-tree
/// edge exactly once and fixes the Type[2] block's row order; default is
/// ascending edge index.
inline EdgewiseMatrix build_edgewise_matrix(const Multigraph& g, const SpanningTree& tree,
                                            VertexId pole,
                                            std::vector<EdgeId> voltage_row_order = {}) {
    const int n = g.edge_count();
    if (pole < 1 || pole > g.vertex_count())
        throw std::invalid_argument("build_edgewise_matrix: pole out of range");

    std::vector<EdgeId> cotree;
    for (EdgeId e = 1; e <= n; ++e)
        if (!tree.contains(e)) cotree.push_back(e);
    if (voltage_row_order.empty()) {
        voltage_row_order = cotree;
    } else {
        std::vector<EdgeId> sorted = voltage_row_order;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != cotree)
            throw std::invalid_argument(
                "build_edgewise_matrix: row order must list each non-tree edge once");
    }

    EdgewiseMatrix m;
    m.entries.assign(static_cast<std::size_t>(n), std::vector<BigInt>(static_cast<std::size_t>(n), 0));
    std::size_t row = 0;
    for (VertexId u = 1; u <= g.vertex_count(); ++u) {
        if (u == pole) continue;
        for (EdgeId e = 1; e <= n; ++e) {
            const Edge& ed = g.edge(e);
            if (ed.tail == ed.head) continue;
            if (ed.tail == u) m.entries[row][static_cast<std::size_t>(e - 1)] = 1;
            if (ed.head == u) m.entries[row][static_cast<std::size_t>(e - 1)] = -1;
        }
        m.rows.push_back(RowLabel{RowLabel::Kind::vertex, u});
        ++row;
    }
    for (EdgeId e : voltage_row_order) {
        for (auto [f, s] : fundamental_cycle(g, tree, e))
            m.entries[row][static_cast<std::size_t>(f - 1)] += s;
        m.rows.push_back(RowLabel{RowLabel::Kind::cycle, e});
        ++row;
    }
    if (row != static_cast<std::size_t>(n))
        throw std::logic_error("build_edgewise_matrix: row/column count mismatch");
    return m;
}

inline BigInt det_exact(const EdgewiseMatrix& m) { return det_bareiss(m.entries); }

/// The four parities behind rho = sigma * lambda.
struct SignData {
    int p1 = 0;  // tree edges pointing toward their subtree vertex
    int p2 = 0;  // vertex-to-parent-edge matching, as a permutation
    int p3 = 0;  // positions of the tree edges among all edges
    int p4 = 0;  // Type[2] row order
    int sigma = 1;   // (-1)^(p1+p2+p3)
    int lambda = 1;  // (-1)^p4
    int rho = 1;     // sigma * lambda
};

inline SignData compute_signs(const Multigraph& g, const SpanningTree& tree, VertexId pole,
                              const std::vector<EdgeId>& voltage_row_order = {}) {
    const detail::TreeRooting r = detail::root_tree(g, tree, pole);
    SignData s;

    // p1: count tree edges whose head is the child they hang below, i.e.
    // the first edge on the child's path to the pole points back at it.
    for (VertexId v = 1; v <= g.vertex_count(); ++v) {
        if (v == pole) continue;
        const EdgeId e = r.parent_edge[static_cast<std::size_t>(v)];
        if (g.edge(e).head == v) s.p1 ^= 1;
    }

    // p2: with vertices a_1 < ... (pole skipped) and tree edges
    // b_1 < ..., the map "a_i -> position of its parent edge" is a
    // permutation; take its parity.
    std::vector<EdgeId> sorted_tree = tree.edges;  // already ascending
    std::vector<int> alpha;
    for (VertexId v = 1; v <= g.vertex_count(); ++v) {
        if (v == pole) continue;
        const EdgeId e = r.parent_edge[static_cast<std::size_t>(v)];
        const auto it = std::lower_bound(sorted_tree.begin(), sorted_tree.end(), e);
        alpha.push_back(static_cast<int>(it - sorted_tree.begin()) + 1);
    }
    s.p2 = detail::inversion_parity(alpha);

    // p3: parity of sum of (b_j + j) over the sorted tree edges.
    long long acc = 0;
    for (std::size_t j = 0; j < sorted_tree.size(); ++j)
        acc += sorted_tree[j] + static_cast<long long>(j + 1);
    s.p3 = static_cast<int>(acc & 1);

    // p4: parity of the Type[2] row order relative to ascending.
    if (!voltage_row_order.empty()) {
        std::vector<int> seq(voltage_row_order.begin(), voltage_row_order.end());
        s.p4 = detail::inversion_parity(seq);
    }

    s.sigma = (s.p1 ^ s.p2 ^ s.p3) ? -1 : 1;
    s.lambda = s.p4 ? -1 : 1;
    s.rho = s.sigma * s.lambda;
    return s;
}

struct EtaOptions {
    VertexId pole = 1;
    std::optional<SpanningTree> tree;        // default: lowest-index spanning tree
    std::vector<EdgeId> voltage_row_order;   // default: ascending
};

struct EtaResult {
    EdgewiseMatrix matrix;
    SignData signs;
    BigInt det;
    BigInt eta;  // rho * det
};

/// Full computation; throws on disconnected input (no spanning tree).
inline EtaResult eta_detailed(const Multigraph& g, EtaOptions opt = {}) {
    if (!is_connected(g)) throw std::invalid_argument("eta_detailed: graph is disconnected");
    const SpanningTree tree = opt.tree ? *opt.tree : find_spanning_tree(g);
    EtaResult r;
    r.matrix = build_edgewise_matrix(g, tree, opt.pole, opt.voltage_row_order);
    r.signs = compute_signs(g, tree, opt.pole, opt.voltage_row_order);
    r.det = det_exact(r.matrix);
    r.eta = r.signs.rho * r.det;
    return r;
}

/// eta(G); equals the spanning-tree count, so 0 on disconnected input.
inline BigInt eta(const Multigraph& g, EtaOptions opt = {}) {
    if (!is_connected(g)) return 0;
    return eta_detailed(g, std::move(opt)).eta;
}

// --- Kirchhoff-law checks for an edge-valued graph --------------------------

/// Net flow out of v: sum of values on edges leaving v minus entering v.
inline Rational flow_excess(const Multigraph& g, const std::vector<Rational>& values, VertexId v) {
    if (static_cast<int>(values.size()) != g.edge_count())
        throw std::invalid_argument("flow_excess: one value per edge required");
    Rational excess = 0;
    for (EdgeId e = 1; e <= g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.tail == ed.head) continue;
        if (ed.tail == v) excess += values[static_cast<std::size_t>(e - 1)];
        if (ed.head == v) excess -= values[static_cast<std::size_t>(e - 1)];
    }
    return excess;
}

struct LawReport {
    bool current_ok = true;
    bool voltage_ok = true;
    std::vector<VertexId> current_violations;  // vertices outside {S,T} with excess
    std::vector<EdgeId> voltage_violations;    // non-tree edges whose cycle sum is nonzero
    Rational throughput;                       // excess at S (= -excess at T when laws hold)
    bool ok() const { return current_ok && voltage_ok; }
};

/// Checks the current law at every vertex except the poles and the
/// voltage law around every fundamental cycle of `tree` (default:
/// lowest-index spanning tree).
inline LawReport check_kirchhoff_laws(const Multigraph& g, const std::vector<Rational>& values,
                                      VertexId source, VertexId sink,
                                      std::optional<SpanningTree> tree = {}) {
    if (static_cast<int>(values.size()) != g.edge_count())
        throw std::invalid_argument("check_kirchhoff_laws: one value per edge required");
    LawReport report;
    for (VertexId v = 1; v <= g.vertex_count(); ++v) {
        if (v == source || v == sink) continue;
        if (flow_excess(g, values, v) != 0) {
            report.current_ok = false;
            report.current_violations.push_back(v);
        }
    }
    const SpanningTree f = tree ? *tree : find_spanning_tree(g);
    for (EdgeId e = 1; e <= g.edge_count(); ++e) {
        if (f.contains(e)) continue;
        Rational sum = 0;
        for (auto [fe, sgn] : fundamental_cycle(g, f, e))
            sum += sgn * values[static_cast<std::size_t>(fe - 1)];
        if (sum != 0) {
            report.voltage_ok = false;
            report.voltage_violations.push_back(e);
        }
    }
    report.throughput = flow_excess(g, values, source);
    return report;
}

}  // namespace treekit
