#pragma once

// Faces and dual multigraphs from a user-supplied rotation system.
// Embeddings are input, never computed: a rotation system lists, per
// vertex, the cyclic order of edge-ends ("darts") around it. Face walks
// are the orbits of dart -> rotation-successor(reverse(dart)); for a
// connected genus-0 embedding the Euler relation n + 2 = m + k holds.

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "multigraph.hpp"

namespace treekit {

/// One end of an edge. The tail end is written "e+", the head end "e-".
struct Dart {
    EdgeId edge = 0;
    bool at_head = false;
};

inline bool operator==(const Dart& a, const Dart& b) {
    return a.edge == b.edge && a.at_head == b.at_head;
}

/// Dense 0-based dart index; tail end before head end per edge.
inline int dart_index(const Dart& d) { return 2 * (d.edge - 1) + (d.at_head ? 1 : 0); }

inline Dart dart_from_index(int idx) { return Dart{idx / 2 + 1, (idx & 1) != 0}; }

inline Dart reverse(const Dart& d) { return Dart{d.edge, !d.at_head}; }

inline std::string dart_to_string(const Dart& d) {
    return std::to_string(d.edge) + (d.at_head ? "-" : "+");
}

/// Rotation system: rotations()[v-1] is the cyclic dart order at vertex v.
class PlanarEmbedding {
public:
    PlanarEmbedding() = default;
    explicit PlanarEmbedding(std::vector<std::vector<Dart>> rotations)
        : rotations_(std::move(rotations)) {}

    int vertex_count() const { return static_cast<int>(rotations_.size()); }
    const std::vector<Dart>& rotation(VertexId v) const {
        if (v < 1 || v > vertex_count())
            throw std::out_of_range("PlanarEmbedding: invalid VertexId");
        return rotations_[static_cast<std::size_t>(v - 1)];
    }
    const std::vector<std::vector<Dart>>& rotations() const { return rotations_; }

private:
    std::vector<std::vector<Dart>> rotations_;
};

struct FaceSet {
    std::vector<std::vector<Dart>> faces;  // disjoint closed walks covering all 2n darts
    std::vector<int> face_of_dart;         // by dart_index, 0-based face number

    int face_count() const { return static_cast<int>(faces.size()); }
    int boundary_length(int face) const {
        return static_cast<int>(faces[static_cast<std::size_t>(face)].size());
    }
};

namespace detail {

/// Validates that the rotation lists form a permutation of the 2n darts,
/// each attached at the right vertex. Returns, per dart, its (vertex,
/// position) in the rotation system.
struct DartLocation {
    VertexId vertex = 0;
    int position = -1;
};

inline std::vector<DartLocation> locate_darts(const Multigraph& g, const PlanarEmbedding& emb) {
    if (emb.vertex_count() != g.vertex_count())
        throw std::invalid_argument("embedding: rotation count differs from vertex count");
    const int n = g.edge_count();
    std::vector<DartLocation> loc(static_cast<std::size_t>(2 * n));
    std::vector<bool> seen(static_cast<std::size_t>(2 * n), false);
    for (VertexId v = 1; v <= g.vertex_count(); ++v) {
        const auto& rot = emb.rotation(v);
        for (std::size_t i = 0; i < rot.size(); ++i) {
            const Dart d = rot[i];
            if (d.edge < 1 || d.edge > n)
                throw std::invalid_argument("embedding: dart references unknown edge");
            const Edge& ed = g.edge(d.edge);
            const VertexId attach = d.at_head ? ed.head : ed.tail;
            if (attach != v)
                throw std::invalid_argument("embedding: dart " + dart_to_string(d) +
                                            " listed at wrong vertex");
            const int idx = dart_index(d);
            if (seen[static_cast<std::size_t>(idx)])
                throw std::invalid_argument("embedding: dart " + dart_to_string(d) +
                                            " listed twice");
            seen[static_cast<std::size_t>(idx)] = true;
            loc[static_cast<std::size_t>(idx)] = DartLocation{v, static_cast<int>(i)};
        }
    }
    for (int i = 0; i < 2 * n; ++i)
        if (!seen[static_cast<std::size_t>(i)])
            throw std::invalid_argument("embedding: dart " + dart_to_string(dart_from_index(i)) +
                                        " missing from rotations");
    return loc;
}

}  // namespace detail

/// All face walks, traced deterministically starting from the lowest
/// unused dart. Walk successor: reverse the dart, then take the cyclic
/// successor at the vertex the reversed dart is attached to.
inline FaceSet faces(const Multigraph& g, const PlanarEmbedding& emb) {
    const auto loc = detail::locate_darts(g, emb);
    const int total = 2 * g.edge_count();
    FaceSet out;
    out.face_of_dart.assign(static_cast<std::size_t>(total), -1);

    auto successor = [&](const Dart& d) -> Dart {
        const Dart r = reverse(d);
        const auto& at = loc[static_cast<std::size_t>(dart_index(r))];
        const auto& rot = emb.rotation(at.vertex);
        const std::size_t next = (static_cast<std::size_t>(at.position) + 1) % rot.size();
        return rot[next];
    };

    for (int start = 0; start < total; ++start) {
        if (out.face_of_dart[static_cast<std::size_t>(start)] != -1) continue;
        const int face_no = out.face_count();
        std::vector<Dart> walk;
        Dart d = dart_from_index(start);
        do {
            out.face_of_dart[static_cast<std::size_t>(dart_index(d))] = face_no;
            walk.push_back(d);
            d = successor(d);
        } while (dart_index(d) != start);
        out.faces.push_back(std::move(walk));
    }
    return out;
}

/// Genus-0 test for a connected embedded multigraph: n + 2 = m + k.
inline bool euler_check(const Multigraph& g, const PlanarEmbedding& emb) {
    if (!is_connected(g)) throw std::invalid_argument("euler_check: graph must be connected");
    const FaceSet f = faces(g, emb);
    return g.edge_count() + 2 == g.vertex_count() + f.face_count();
}

struct DualResult {
    Multigraph graph;              // k vertices (one per face), n edges
    std::vector<EdgeId> edge_map;  // dual edge i corresponds to original edge edge_map[i-1]
};

/// Dual multigraph: one vertex per face; edge e joins the faces on its two
/// sides (tail side first). A bridge has both darts on one face and
/// dualizes to a loop; a loop dualizes to a bridge.
inline DualResult dual(const Multigraph& g, const PlanarEmbedding& emb) {
    if (!euler_check(g, emb)) throw std::invalid_argument("dual: embedding is not genus 0");
    const FaceSet f = faces(g, emb);
    std::vector<Edge> dual_edges;
    std::vector<EdgeId> edge_map;
    dual_edges.reserve(static_cast<std::size_t>(g.edge_count()));
    for (EdgeId e = 1; e <= g.edge_count(); ++e) {
        const int tail_face = f.face_of_dart[static_cast<std::size_t>(dart_index(Dart{e, false}))];
        const int head_face = f.face_of_dart[static_cast<std::size_t>(dart_index(Dart{e, true}))];
        dual_edges.push_back(Edge{tail_face + 1, head_face + 1});
        edge_map.push_back(e);
    }
    return DualResult{Multigraph(f.face_count(), std::move(dual_edges)), std::move(edge_map)};
}

/// True iff some vertex has degree <= 3 or some face has boundary length
/// <= 3. Holds on every valid genus-0 embedding: otherwise 2n >= 4m and
/// 2n >= 4k, contradicting n + 2 = m + k.
inline bool short_feature_exists(const Multigraph& g, const PlanarEmbedding& emb) {
    if (!is_connected(g))
        throw std::invalid_argument("short_feature_exists: graph must be connected");
    for (VertexId v = 1; v <= g.vertex_count(); ++v)
        if (emb.rotation(v).size() <= 3) return true;
    const FaceSet f = faces(g, emb);
    for (int i = 0; i < f.face_count(); ++i)
        if (f.boundary_length(i) <= 3) return true;
    return false;
}

// --- file format -----------------------------------------------------------
// After the multigraph block, one rotation line per vertex: darts in cyclic
// order, "e+" for the tail end, "e-" for the head end.

inline std::pair<Multigraph, PlanarEmbedding> parse_embedded_multigraph(const std::string& text) {
    const Multigraph g = parse_multigraph(text);

    std::istringstream in(text);
    std::string line;
    int data_lines_to_skip = 2 + g.edge_count();
    std::vector<std::vector<Dart>> rotations;

    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        const bool blank_or_comment =
            first == std::string::npos || line[first] == '#';
        if (data_lines_to_skip > 0) {
            if (!blank_or_comment) --data_lines_to_skip;
            continue;
        }
        if (blank_or_comment) continue;
        if (static_cast<int>(rotations.size()) == g.vertex_count())
            throw ParseError("embedding: extra rotation line");

        std::vector<Dart> rot;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            if (tok.size() < 2 || (tok.back() != '+' && tok.back() != '-'))
                throw ParseError("embedding: malformed dart '" + tok + "'");
            EdgeId e = 0;
            try {
                std::size_t used = 0;
                e = std::stoi(tok.substr(0, tok.size() - 1), &used);
                if (used != tok.size() - 1) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError("embedding: malformed dart '" + tok + "'");
            }
            rot.push_back(Dart{e, tok.back() == '-'});
        }
        rotations.push_back(std::move(rot));
    }
    // Vertices with no incident edges may omit their (empty) line at the end.
    while (static_cast<int>(rotations.size()) < g.vertex_count()) rotations.emplace_back();

    PlanarEmbedding emb(std::move(rotations));
    detail::locate_darts(g, emb);  // full structural validation
    return {g, emb};
}

inline std::string to_text(const Multigraph& g, const PlanarEmbedding& emb) {
    std::ostringstream out;
    out << to_text(g);
    for (VertexId v = 1; v <= g.vertex_count(); ++v) {
        const auto& rot = emb.rotation(v);
        for (std::size_t i = 0; i < rot.size(); ++i) {
            if (i) out << ' ';
            out << dart_to_string(rot[i]);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace treekit
