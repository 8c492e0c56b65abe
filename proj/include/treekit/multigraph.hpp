#pragma once

// Indexed multigraph with the edge surgery everything else builds on.
// Vertices and edges are 1-based; loops and parallel edges are legal.
// All operations are pure: they return fresh values and never mutate.

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace treekit {

using VertexId = int;  // 1..m
using EdgeId = int;    // 1..n, position in the edge sequence

struct Edge {
    VertexId tail = 0;
    VertexId head = 0;
};

inline bool operator==(const Edge& a, const Edge& b) {
    return a.tail == b.tail && a.head == b.head;
}

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Multigraph {
public:
    Multigraph() = default;

    Multigraph(int vertex_count, std::vector<Edge> edges)
        : m_(vertex_count), edges_(std::move(edges)) {
        if (m_ < 0) throw std::invalid_argument("Multigraph: negative vertex count");
        for (const Edge& e : edges_) {
            if (e.tail < 1 || e.tail > m_ || e.head < 1 || e.head > m_)
                throw std::invalid_argument("Multigraph: edge endpoint out of range");
        }
    }

    int vertex_count() const { return m_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    const Edge& edge(EdgeId e) const {
        if (e < 1 || e > edge_count()) throw std::out_of_range("Multigraph: invalid EdgeId");
        return edges_[static_cast<std::size_t>(e - 1)];
    }

    bool is_loop(EdgeId e) const {
        const Edge& ed = edge(e);
        return ed.tail == ed.head;
    }

    bool has_loop() const {
        return std::any_of(edges_.begin(), edges_.end(),
                           [](const Edge& e) { return e.tail == e.head; });
    }

private:
    int m_ = 0;
    std::vector<Edge> edges_;
};

/// Per-vertex incidence: (neighbor, edge id) pairs; a loop appears twice.
inline std::vector<std::vector<std::pair<VertexId, EdgeId>>> adjacency_list(const Multigraph& g) {
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(
        static_cast<std::size_t>(g.vertex_count()) + 1);
    for (EdgeId e = 1; e <= g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        adj[static_cast<std::size_t>(ed.tail)].emplace_back(ed.head, e);
        adj[static_cast<std::size_t>(ed.head)].emplace_back(ed.tail, e);
    }
    return adj;
}

// --- file format -----------------------------------------------------------
// line 1: m, line 2: n, then n lines "tail head"; '#' lines are comments.
// Content after the edge list (an embedding block, say) is ignored here.

inline Multigraph parse_multigraph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    auto next_line = [&](std::string& out) -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            if (line[first] == '#') continue;
            out = line;
            return true;
        }
        return false;
    };

    auto fail = [&](const std::string& what) -> Multigraph {
        throw ParseError("multigraph parse error at line " + std::to_string(line_no) + ": " + what);
    };

    std::string cur;
    if (!next_line(cur)) return fail("missing vertex count");
    int m = 0;
    {
        std::istringstream ls(cur);
        std::string extra;
        if (!(ls >> m) || (ls >> extra)) return fail("malformed vertex count");
    }
    if (m < 1) return fail("vertex count must be at least 1");

    if (!next_line(cur)) return fail("missing edge count");
    int n = 0;
    {
        std::istringstream ls(cur);
        std::string extra;
        if (!(ls >> n) || (ls >> extra)) return fail("malformed edge count");
    }
    if (n < 0) return fail("negative edge count");

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (!next_line(cur)) return fail("expected " + std::to_string(n) + " edges, got " +
                                         std::to_string(i));
        std::istringstream ls(cur);
        Edge e;
        std::string extra;
        if (!(ls >> e.tail >> e.head) || (ls >> extra)) return fail("malformed edge line");
        if (e.tail < 1 || e.tail > m || e.head < 1 || e.head > m)
            return fail("endpoint out of range");
        edges.push_back(e);
    }
    return Multigraph(m, std::move(edges));
}

inline std::string to_text(const Multigraph& g) {
    std::ostringstream out;
    out << g.vertex_count() << '\n' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.tail << ' ' << e.head << '\n';
    return out.str();
}

// --- edge surgery ----------------------------------------------------------

/// Removes edge e; later edges shift down by one, vertex set unchanged.
inline Multigraph delete_edge(const Multigraph& g, EdgeId e) {
    g.edge(e);  // range check
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count() - 1));
    for (EdgeId i = 1; i <= g.edge_count(); ++i)
        if (i != e) edges.push_back(g.edge(i));
    return Multigraph(g.vertex_count(), std::move(edges));
}

/// Removes several edges at once, preserving the relative order of the rest.
inline Multigraph delete_edges(const Multigraph& g, std::vector<EdgeId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (EdgeId e : ids) g.edge(e);
    std::vector<Edge> edges;
    auto it = ids.begin();
    for (EdgeId i = 1; i <= g.edge_count(); ++i) {
        if (it != ids.end() && *it == i) {
            ++it;
            continue;
        }
        edges.push_back(g.edge(i));
    }
    return Multigraph(g.vertex_count(), std::move(edges));
}

/// Merges the endpoints of e (the smaller index survives, larger vertex
/// indices shift down) and drops e. Edges between the merged endpoints
/// become loops and are kept; remove_loops strips them when wanted.
inline Multigraph contract_edge(const Multigraph& g, EdgeId e) {
    if (g.is_loop(e)) throw std::invalid_argument("contract_edge: cannot contract a loop");
    const Edge& ed = g.edge(e);
    const VertexId keep = std::min(ed.tail, ed.head);
    const VertexId gone = std::max(ed.tail, ed.head);
    auto remap = [&](VertexId v) -> VertexId {
        if (v == gone) return keep;
        return v > gone ? v - 1 : v;
    };
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count() - 1));
    for (EdgeId i = 1; i <= g.edge_count(); ++i) {
        if (i == e) continue;
        const Edge& cur = g.edge(i);
        edges.push_back(Edge{remap(cur.tail), remap(cur.head)});
    }
    return Multigraph(g.vertex_count() - 1, std::move(edges));
}

/// Deletes every loop; the spanning-tree count is unaffected.
inline Multigraph remove_loops(const Multigraph& g) {
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        if (e.tail != e.head) edges.push_back(e);
    return Multigraph(g.vertex_count(), std::move(edges));
}

// --- connectivity ----------------------------------------------------------

/// Component index (0-based, in order of first vertex) for each vertex;
/// entry v-1 belongs to vertex v.
inline std::vector<int> components(const Multigraph& g) {
    const int m = g.vertex_count();
    std::vector<int> comp(static_cast<std::size_t>(m), -1);
    const auto adj = adjacency_list(g);
    int next = 0;
    std::vector<VertexId> stack;
    for (VertexId s = 1; s <= m; ++s) {
        if (comp[static_cast<std::size_t>(s - 1)] != -1) continue;
        comp[static_cast<std::size_t>(s - 1)] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            for (const auto& [w, e] : adj[static_cast<std::size_t>(v)]) {
                if (comp[static_cast<std::size_t>(w - 1)] == -1) {
                    comp[static_cast<std::size_t>(w - 1)] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return comp;
}

inline int component_count(const Multigraph& g) {
    const auto comp = components(g);
    return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

/// The empty graph counts as connected (0 components).
inline bool is_connected(const Multigraph& g) { return component_count(g) <= 1; }

// --- spanning trees --------------------------------------------------------

struct SpanningTree {
    std::vector<EdgeId> edges;  // ascending

    bool contains(EdgeId e) const {
        return std::binary_search(edges.begin(), edges.end(), e);
    }
    int size() const { return static_cast<int>(edges.size()); }
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(b)] = a;
        return true;
    }
};

}  // namespace detail

/// Greedy forest over the given edge order; tree edges reported ascending.
inline SpanningTree spanning_tree_from_order(const Multigraph& g,
                                             const std::vector<EdgeId>& order) {
    detail::UnionFind uf(g.vertex_count() + 1);
    SpanningTree t;
    for (EdgeId e : order) {
        const Edge& ed = g.edge(e);
        if (ed.tail == ed.head) continue;
        if (uf.unite(ed.tail, ed.head)) t.edges.push_back(e);
    }
    if (t.size() != g.vertex_count() - 1)
        throw std::invalid_argument("spanning tree requires a connected graph");
    std::sort(t.edges.begin(), t.edges.end());
    return t;
}

/// Deterministic spanning tree: greedy union-find over edges in index order.
inline SpanningTree find_spanning_tree(const Multigraph& g) {
    std::vector<EdgeId> order(static_cast<std::size_t>(g.edge_count()));
    std::iota(order.begin(), order.end(), 1);
    return spanning_tree_from_order(g, order);
}

/// True when `tree` is a spanning tree of g.
inline bool is_spanning_tree(const Multigraph& g, const SpanningTree& tree) {
    if (tree.size() != g.vertex_count() - 1) return false;
    detail::UnionFind uf(g.vertex_count() + 1);
    for (EdgeId e : tree.edges) {
        if (e < 1 || e > g.edge_count()) return false;
        const Edge& ed = g.edge(e);
        if (ed.tail == ed.head) return false;
        if (!uf.unite(ed.tail, ed.head)) return false;
    }
    return true;
}

// --- relabeling helpers ----------------------------------------------------
// Used by the invariance checks: an indexed multigraph can be re-indexed,
// re-ordered, or re-oriented without changing any counting result.

/// perm[v-1] is the new index of old vertex v; perm must be a bijection.
inline Multigraph permute_vertices(const Multigraph& g, const std::vector<VertexId>& perm) {
    const int m = g.vertex_count();
    if (static_cast<int>(perm.size()) != m)
        throw std::invalid_argument("permute_vertices: wrong permutation size");
    std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
    for (VertexId p : perm) {
        if (p < 1 || p > m || seen[static_cast<std::size_t>(p)])
            throw std::invalid_argument("permute_vertices: not a permutation");
        seen[static_cast<std::size_t>(p)] = true;
    }
    std::vector<Edge> edges;
    edges.reserve(g.edges().size());
    for (const Edge& e : g.edges())
        edges.push_back(Edge{perm[static_cast<std::size_t>(e.tail - 1)],
                             perm[static_cast<std::size_t>(e.head - 1)]});
    return Multigraph(m, std::move(edges));
}

/// perm[e-1] is the new index of old edge e.
inline Multigraph permute_edges(const Multigraph& g, const std::vector<EdgeId>& perm) {
    const int n = g.edge_count();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permute_edges: wrong permutation size");
    std::vector<Edge> edges(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (EdgeId e = 1; e <= n; ++e) {
        const EdgeId p = perm[static_cast<std::size_t>(e - 1)];
        if (p < 1 || p > n || seen[static_cast<std::size_t>(p)])
            throw std::invalid_argument("permute_edges: not a permutation");
        seen[static_cast<std::size_t>(p)] = true;
        edges[static_cast<std::size_t>(p - 1)] = g.edge(e);
    }
    return Multigraph(g.vertex_count(), std::move(edges));
}

/// Swaps tail/head for every edge whose flag is set.
inline Multigraph flip_edges(const Multigraph& g, const std::vector<bool>& flip) {
    if (static_cast<int>(flip.size()) != g.edge_count())
        throw std::invalid_argument("flip_edges: wrong flag count");
    std::vector<Edge> edges;
    edges.reserve(g.edges().size());
    for (EdgeId e = 1; e <= g.edge_count(); ++e) {
        Edge ed = g.edge(e);
        if (flip[static_cast<std::size_t>(e - 1)]) std::swap(ed.tail, ed.head);
        edges.push_back(ed);
    }
    return Multigraph(g.vertex_count(), std::move(edges));
}

}  // namespace treekit
