#pragma once

// Squared-rectangle analysis: dissection parsing and validation, level
// detection, the level network, Kirchhoff verification, exact width
// recovery, prime/bias bounds, and the inverse-Fibonacci transform.
//
// Coordinates are integers with y growing downward. The network's edges
// run from a tile's top level to its bottom level, so S is the top side
// of the rectangle and T the bottom.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exact.hpp"
#include "kirchhoff.hpp"
#include "multigraph.hpp"
#include "treecount.hpp"

namespace treekit {

struct Rect {
    long long x = 0, y = 0;  // top-left corner
    long long w = 0, h = 0;
    bool is_square() const { return w == h; }
    long long long_side() const { return std::max(w, h); }
    bool operator==(const Rect&) const = default;
};

struct Dissection {
    long long W = 0, H = 0;
    std::vector<Rect> tiles;
    bool operator==(const Dissection&) const = default;
};

inline bool all_square(const Dissection& d) {
    return std::all_of(d.tiles.begin(), d.tiles.end(),
                       [](const Rect& r) { return r.is_square(); });
}

/// A dissection whose tiles are all squares. Squareness is enforced at
/// construction; coverage is still validate_dissection's job.
class Squaring {
public:
    explicit Squaring(Dissection d) : d_(std::move(d)) {
        if (!all_square(d_)) throw std::invalid_argument("Squaring: non-square tile");
    }
    const Dissection& dissection() const { return d_; }
    const std::vector<Rect>& tiles() const { return d_.tiles; }
    long long W() const { return d_.W; }
    long long H() const { return d_.H; }

private:
    Dissection d_;
};

// --- parsing and rendering ---------------------------------------------------

/// Line 1: "W H". Each further line: "x y w h", or "x y s" for a square.
/// '#' starts a comment; blank lines are skipped.
inline Dissection parse_dissection(const std::string& text) {
    std::istringstream in(text);
    Dissection d;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::vector<long long> v;
        long long value = 0;
        while (fields >> value) v.push_back(value);
        std::string junk;
        if (fields.clear(), fields >> junk)
            throw ParseError("line " + std::to_string(line_no) + ": unexpected token '" + junk + "'");
        if (v.empty()) continue;
        if (!have_header) {
            if (v.size() != 2)
                throw ParseError("line " + std::to_string(line_no) + ": expected 'W H'");
            d.W = v[0];
            d.H = v[1];
            if (d.W < 1 || d.H < 1)
                throw ParseError("line " + std::to_string(line_no) + ": dimensions must be positive");
            have_header = true;
            continue;
        }
        Rect r;
        if (v.size() == 3) {
            r = Rect{v[0], v[1], v[2], v[2]};
        } else if (v.size() == 4) {
            r = Rect{v[0], v[1], v[2], v[3]};
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'x y w h' or 'x y s'");
        }
        if (r.w < 1 || r.h < 1)
            throw ParseError("line " + std::to_string(line_no) + ": tile dimensions must be positive");
        if (r.x < 0 || r.y < 0)
            throw ParseError("line " + std::to_string(line_no) + ": tile corner must be nonnegative");
        d.tiles.push_back(r);
    }
    if (!have_header) throw ParseError("empty dissection file");
    if (d.tiles.empty()) throw ParseError("dissection has no tiles");
    return d;
}

inline std::string dissection_to_text(const Dissection& d) {
    std::ostringstream out;
    out << d.W << ' ' << d.H << '\n';
    for (const Rect& r : d.tiles) {
        out << r.x << ' ' << r.y << ' ' << r.w;
        if (!r.is_square()) out << ' ' << r.h;
        out << '\n';
    }
    return out.str();
}

// --- validation --------------------------------------------------------------

struct ValidationReport {
    bool valid = true;
    std::string message;  // first gap or overlap, with coordinates
};

/// Exact-cover check: inside every maximal y-strip between consecutive
/// horizontal tile boundaries, the tile x-intervals must partition
/// [0, W]; the total area is double-checked against W*H.
inline ValidationReport validate_dissection(const Dissection& d) {
    auto fail = [](std::string msg) { return ValidationReport{false, std::move(msg)}; };
    long long area = 0;
    for (std::size_t i = 0; i < d.tiles.size(); ++i) {
        const Rect& r = d.tiles[i];
        if (r.x + r.w > d.W || r.y + r.h > d.H)
            return fail("tile " + std::to_string(i + 1) + " leaves the rectangle");
        area += r.w * r.h;
    }

    std::vector<long long> cuts{0, d.H};
    for (const Rect& r : d.tiles) {
        cuts.push_back(r.y);
        cuts.push_back(r.y + r.h);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const long long y0 = cuts[s], y1 = cuts[s + 1];
        std::vector<std::pair<long long, long long>> spans;
        for (const Rect& r : d.tiles)
            if (r.y <= y0 && r.y + r.h >= y1) spans.push_back({r.x, r.x + r.w});
        std::sort(spans.begin(), spans.end());
        long long at = 0;
        for (auto [x0, x1] : spans) {
            if (x0 > at)
                return fail("gap at x=" + std::to_string(at) + ".." + std::to_string(x0) +
                            ", y=" + std::to_string(y0) + ".." + std::to_string(y1));
            if (x0 < at)
                return fail("overlap at x=" + std::to_string(x0) + ", y=" + std::to_string(y0) +
                            ".." + std::to_string(y1));
            at = x1;
        }
        if (at != d.W)
            return fail("gap at x=" + std::to_string(at) + ".." + std::to_string(d.W) +
                        ", y=" + std::to_string(y0) + ".." + std::to_string(y1));
    }

    if (area != d.W * d.H) return fail("area mismatch");  // unreachable after the sweep
    return {};
}

// --- levels and the network --------------------------------------------------

struct Level {
    long long y = 0;
    long long x1 = 0, x2 = 0;
    bool contains(long long a, long long b) const { return x1 <= a && b <= x2; }
    bool operator==(const Level&) const = default;
};

/// Maximal horizontal segments: all tile top/bottom sides plus the
/// rectangle's own top and bottom, merged at equal y when they touch or
/// overlap; a gap keeps segments distinct. Sorted by (y, x1).
inline std::vector<Level> levels(const Dissection& d) {
    std::map<long long, std::vector<std::pair<long long, long long>>> rows;
    rows[0].push_back({0, d.W});
    rows[d.H].push_back({0, d.W});
    for (const Rect& r : d.tiles) {
        rows[r.y].push_back({r.x, r.x + r.w});
        rows[r.y + r.h].push_back({r.x, r.x + r.w});
    }
    std::vector<Level> out;
    for (auto& [y, spans] : rows) {
        std::sort(spans.begin(), spans.end());
        Level cur{y, spans.front().first, spans.front().second};
        for (std::size_t i = 1; i < spans.size(); ++i) {
            if (spans[i].first <= cur.x2) {
                cur.x2 = std::max(cur.x2, spans[i].second);
            } else {
                out.push_back(cur);
                cur = Level{y, spans[i].first, spans[i].second};
            }
        }
        out.push_back(cur);
    }
    return out;  // map iteration gives ascending y; spans merged in x order
}

struct SquaringNetwork {
    Multigraph graph;               // vertex i+1 <-> level_list[i]; edge i+1 <-> tile i
    std::vector<long long> weights; // per edge: the tile's size
    VertexId source = 0;            // top level
    VertexId sink = 0;              // bottom level
    std::vector<Level> level_list;
    long long W = 0, H = 0;
};

/// One vertex per level, one edge per tile from its top level down to
/// its bottom level, weight = tile size.
inline SquaringNetwork build_network(const Squaring& q) {
    const Dissection& d = q.dissection();
    std::vector<Level> lv = levels(d);
    auto locate = [&lv](long long y, long long a, long long b) -> int {
        for (std::size_t i = 0; i < lv.size(); ++i)
            if (lv[i].y == y && lv[i].contains(a, b)) return static_cast<int>(i) + 1;
        throw std::logic_error("build_network: tile side not contained in a level");
    };

    std::vector<Edge> edges;
    std::vector<long long> weights;
    for (const Rect& r : d.tiles) {
        const VertexId top = locate(r.y, r.x, r.x + r.w);
        const VertexId bottom = locate(r.y + r.h, r.x, r.x + r.w);
        edges.push_back(Edge{top, bottom});
        weights.push_back(r.w);
    }

    SquaringNetwork net;
    net.graph = Multigraph(static_cast<int>(lv.size()), std::move(edges));
    net.weights = std::move(weights);
    net.source = locate(0, 0, d.W);
    net.sink = locate(d.H, 0, d.W);
    net.level_list = std::move(lv);
    net.W = d.W;
    net.H = d.H;
    if (!is_connected(net.graph))
        throw std::logic_error("build_network: network is not connected");
    return net;
}

struct NetworkVerdict {
    LawReport law;
    bool throughput_ok = false;  // throughput equals the bottom length W
    Rational expected_throughput;
    bool ok() const { return law.ok() && throughput_ok; }
};

/// Current law at every non-pole level, voltage law around every
/// fundamental cycle, and throughput = N (the bottom side).
inline NetworkVerdict verify_kirchhoff_laws(const SquaringNetwork& net) {
    std::vector<Rational> values;
    values.reserve(net.weights.size());
    for (long long w : net.weights) values.push_back(Rational(w));
    NetworkVerdict v;
    v.law = check_kirchhoff_laws(net.graph, values, net.source, net.sink);
    v.expected_throughput = Rational(net.W);
    v.throughput_ok = v.law.throughput == v.expected_throughput;
    return v;
}

struct WidthSolution {
    std::vector<Rational> widths;   // per edge
    BigInt tree_count;              // t(G) of the network graph
    std::vector<BigInt> a;          // a_e = width * t(G), integral by Cramer
    std::vector<BigInt> b;          // b_e with a_e = N * b_e
};

/// Exact solve of the edgewise system: every row of M_{G,F} set to zero
/// except the current-law row of the sink, which carries the throughput.
/// (The sink row reads -N with our +1-leaves/-1-enters convention; that
/// sign is what makes the recovered widths positive.)
inline WidthSolution solve_widths(const Multigraph& g, VertexId source, VertexId sink,
                                  const BigInt& N) {
    if (g.edge_count() < 1) throw std::invalid_argument("solve_widths: empty network");
    if (!is_connected(g)) throw std::invalid_argument("solve_widths: network is disconnected");
    if (source == sink) throw std::invalid_argument("solve_widths: poles coincide");
    const SpanningTree tree = find_spanning_tree(g);
    const EdgewiseMatrix m = build_edgewise_matrix(g, tree, source);
    std::vector<BigInt> rhs(m.rows.size(), 0);
    bool placed = false;
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        if (m.rows[i].kind == RowLabel::Kind::vertex && m.rows[i].id == sink) {
            rhs[i] = -N;
            placed = true;
        }
    }
    if (!placed) throw std::invalid_argument("solve_widths: sink has no current-law row");

    const auto sol = solve_linear(m.entries, rhs);
    if (!sol) throw std::logic_error("solve_widths: singular system on a connected network");

    WidthSolution out;
    out.widths = *sol;
    out.tree_count = count_matrix_tree(g);
    for (const Rational& w : out.widths) {
        const Rational ae = w * out.tree_count;
        if (denominator(ae) != 1)
            throw std::logic_error("solve_widths: a_e is not an integer");
        out.a.push_back(numerator(ae));
    }
    for (const BigInt& ae : out.a) {
        if (N == 0 || ae % N != 0)
            throw std::logic_error("solve_widths: a_e is not divisible by N");
        out.b.push_back(ae / N);
    }
    return out;
}

/// Network overload; when N is the bottom length the recovered widths
/// must reproduce the tile sizes, and that is checked.
inline WidthSolution solve_widths(const SquaringNetwork& net, const BigInt& N) {
    WidthSolution sol = solve_widths(net.graph, net.source, net.sink, N);
    if (N == BigInt(net.W)) {
        for (std::size_t e = 0; e < net.weights.size(); ++e)
            if (sol.widths[e] != Rational(net.weights[e]))
                throw std::logic_error("solve_widths: solution disagrees with tile sizes");
    }
    return sol;
}

// --- prime, bias, bound ------------------------------------------------------

inline long long gamma(const Rect& r) { return std::gcd(r.w, r.h); }

/// delta(R) = max side / gcd of sides; 1 exactly for squares.
inline long long bias(const Rect& r) { return r.long_side() / gamma(r); }

struct PrimeCheck {
    bool is_prime = false;
    long long d = 0;  // gcd of gamma over all tiles
};

inline PrimeCheck prime_check(const Dissection& dis) {
    long long d = 0;
    for (const Rect& r : dis.tiles) d = std::gcd(d, gamma(r));
    return PrimeCheck{d == 1, d};
}

struct BoundReport {
    BigInt sum_bias;        // integer left side
    long long max_side = 0; // max(W, H)
    long long d = 1;
    bool holds = false;     // sum_bias >= log_tau(max_side / d), certified
    int required = 0;       // ceil(log_tau(max_side / d))
    double log2_reference = 0.0;  // log_tau(max_side) via 1.1134 * log2, report only
    bool is_squaring = false;
    bool is_prime = false;
    int tile_count = 0;
    int prime_required = 0;     // ceil(log_tau(max_side)); squarings only
    bool prime_ok = false;      // tile_count >= prime_required
};

/// Certified bias bound: sum of biases vs log_tau(max(R)/d). An integer
/// k has k >= log_tau X iff tau^k >= X, decided with interval powers.
/// For prime squarings also reports tile count vs ceil(log_tau max(R)).
inline BoundReport check_bound(const Dissection& dis, TauInterval interval = TauInterval()) {
    BoundReport rep;
    rep.max_side = std::max(dis.W, dis.H);
    rep.d = prime_check(dis).d;
    rep.tile_count = static_cast<int>(dis.tiles.size());
    for (const Rect& r : dis.tiles) rep.sum_bias += bias(r);
    rep.is_squaring = all_square(dis);
    rep.is_prime = rep.d == 1;

    const Rational x(rep.max_side, rep.d);
    const unsigned long s = rep.sum_bias.convert_to<unsigned long>();
    for (;;) {
        if (rational_pow(interval.lo(), s) >= x) {
            rep.holds = true;
            break;
        }
        if (rational_pow(interval.hi(), s) <= x) {
            rep.holds = false;
            break;
        }
        interval.refine();
    }
    rep.required = min_tau_exponent(x, interval);
    if (rep.is_squaring) {
        rep.prime_required = min_tau_exponent(Rational(rep.max_side), interval);
        rep.prime_ok = rep.tile_count >= rep.prime_required;
    }
    rep.log2_reference = 1.1134 * std::log2(static_cast<double>(rep.max_side));
    return rep;
}

// --- inverse Fibonacci -------------------------------------------------------

/// Splits non-square tile k (0-based) into its maximal square, placed at
/// the end with the lesser coordinate along the long axis, plus the
/// remainder, inserted right after position k.
inline Dissection inverse_fibonacci_step(const Dissection& d, std::size_t k) {
    if (k >= d.tiles.size()) throw std::invalid_argument("inverse_fibonacci_step: no such tile");
    const Rect r = d.tiles[k];
    if (r.is_square()) throw std::invalid_argument("inverse_fibonacci_step: tile is already square");
    Rect square, rest;
    if (r.w > r.h) {
        square = Rect{r.x, r.y, r.h, r.h};
        rest = Rect{r.x + r.h, r.y, r.w - r.h, r.h};
    } else {
        square = Rect{r.x, r.y, r.w, r.w};
        rest = Rect{r.x, r.y + r.w, r.w, r.h - r.w};
    }
    Dissection out = d;
    out.tiles[k] = square;
    out.tiles.insert(out.tiles.begin() + static_cast<std::ptrdiff_t>(k) + 1, rest);
    return out;
}

struct TransformResult {
    Dissection result;  // all tiles square
    bool scaled = false;
    long long d = 1;    // gcd removed when scaled
    int steps = 0;
};

/// Repeats inverse_fibonacci_step on the lowest-index non-square tile —
/// the Euclidean algorithm run tile by tile — then optionally divides
/// everything by the gcd d of the tile sizes to reach a prime squaring.
inline TransformResult transform_to_squaring(Dissection d, bool scale = true) {
    TransformResult out;
    for (;;) {
        std::size_t k = d.tiles.size();
        for (std::size_t i = 0; i < d.tiles.size(); ++i) {
            if (!d.tiles[i].is_square()) {
                k = i;
                break;
            }
        }
        if (k == d.tiles.size()) break;
        d = inverse_fibonacci_step(d, k);
        ++out.steps;
    }
    out.d = prime_check(d).d;
    if (scale && out.d > 1) {
        const long long g = out.d;
        auto divide = [g](long long v) {
            if (v % g != 0) throw std::logic_error("transform_to_squaring: coordinate not divisible by d");
            return v / g;
        };
        d.W = divide(d.W);
        d.H = divide(d.H);
        for (Rect& r : d.tiles) r = Rect{divide(r.x), divide(r.y), divide(r.w), divide(r.h)};
        out.scaled = true;
    }
    out.result = std::move(d);
    return out;
}

/// Clockwise quarter turn; swaps W and H, keeps every tile a tile.
inline Dissection rotate90(const Dissection& d) {
    Dissection out;
    out.W = d.H;
    out.H = d.W;
    for (const Rect& r : d.tiles) out.tiles.push_back(Rect{d.H - r.y - r.h, r.x, r.h, r.w});
    return out;
}

// --- rendering ---------------------------------------------------------------

/// Standalone SVG: one rect per tile labeled with its size, levels drawn
/// as bold segments.
inline std::string render_svg(const Dissection& d) {
    const long long scale = 20;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << d.W * scale << "\" height=\""
        << d.H * scale << "\" viewBox=\"0 0 " << d.W * scale << ' ' << d.H * scale << "\">\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << d.W * scale << "\" height=\"" << d.H * scale
        << "\" fill=\"white\" stroke=\"none\"/>\n";
    for (const Rect& r : d.tiles) {
        out << "  <rect x=\"" << r.x * scale << "\" y=\"" << r.y * scale << "\" width=\""
            << r.w * scale << "\" height=\"" << r.h * scale
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
        const long long font = std::max<long long>(scale / 2, std::min(r.w, r.h) * scale / 3);
        out << "  <text x=\"" << r.x * scale + r.w * scale / 2 << "\" y=\""
            << r.y * scale + r.h * scale / 2 << "\" font-size=\"" << font
            << "\" text-anchor=\"middle\" dominant-baseline=\"central\">";
        if (r.is_square())
            out << r.w;
        else
            out << r.w << "&#215;" << r.h;
        out << "</text>\n";
    }
    for (const Level& lv : levels(d)) {
        out << "  <line x1=\"" << lv.x1 * scale << "\" y1=\"" << lv.y * scale << "\" x2=\""
            << lv.x2 * scale << "\" y2=\"" << lv.y * scale
            << "\" stroke=\"black\" stroke-width=\"4\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace treekit
