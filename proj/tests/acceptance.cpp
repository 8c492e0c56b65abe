// Acceptance checks. Each criterion prints exactly one PASS/FAIL line;
// the exit status is the number of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <treekit/generators.hpp>
#include <treekit/kirchhoff.hpp>
#include <treekit/multigraph.hpp>
#include <treekit/planar_dual.hpp>
#include <treekit/squaring.hpp>
#include <treekit/treecount.hpp>

#include "oracles.hpp"

using namespace treekit;
using Clock = std::chrono::steady_clock;

namespace {

std::string read_file(const std::string& name) {
    std::ifstream f(std::string(TREEKIT_TEST_DATA) + "/" + name);
    if (!f) throw std::runtime_error("missing test fixture: " + name);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

struct NamedEmbedded {
    std::string name;
    EmbeddedGraph eg;
};

/// Embedded corpus: every rotation-system fixture plus the generated
/// planar families (grids, wheels).
std::vector<NamedEmbedded> embedded_corpus() {
    std::vector<NamedEmbedded> out;
    for (const char* name :
         {"triangle.emg", "theta.emg", "single_edge.emg", "loop.emg", "k4.emg"}) {
        auto [g, emb] = parse_embedded_multigraph(read_file(name));
        out.push_back({name, EmbeddedGraph{std::move(g), std::move(emb)}});
    }
    for (int k = 1; k <= 4; ++k)
        out.push_back({"grid-" + std::to_string(k), grid_graph(k)});
    for (int k = 3; k <= 8; ++k)
        out.push_back({"wheel-" + std::to_string(k), wheel_graph(k)});
    return out;
}

struct NamedGraph {
    std::string name;
    Multigraph g;
};

/// Graph corpus: the embedded corpus, all its duals, the disconnected
/// fixture, and a fixed batch of seeded random multigraphs.
std::vector<NamedGraph> graph_corpus() {
    std::vector<NamedGraph> out;
    for (const NamedEmbedded& e : embedded_corpus()) {
        out.push_back({e.name, e.eg.graph});
        out.push_back({"dual(" + e.name + ")", dual(e.eg.graph, e.eg.embedding).graph});
    }
    out.push_back({"disconnected.mg", parse_multigraph(read_file("disconnected.mg"))});
    Rng rng(1729);
    for (int i = 0; i < 20; ++i)
        out.push_back({"random-" + std::to_string(i + 1), random_connected_multigraph(rng, 8, 12)});
    return out;
}

BigInt sum_bias(const Dissection& d) {
    BigInt s = 0;
    for (const Rect& r : d.tiles) s += bias(r);
    return s;
}

/// Largest spanning-tree count over all connected multigraphs with n
/// edges (n <= 3), by full enumeration up to n+1 vertices.
TreeCount mu(int n) {
    TreeCount best = 0;
    for (int m = 1; m <= n + 1; ++m) {
        const int pairs = m * m;
        long long total = 1;
        for (int i = 0; i < n; ++i) total *= pairs;
        for (long long code = 0; code < total; ++code) {
            long long c = code;
            std::vector<Edge> edges;
            for (int i = 0; i < n; ++i) {
                const int p = static_cast<int>(c % pairs);
                c /= pairs;
                edges.push_back(Edge{p / m + 1, p % m + 1});
            }
            const Multigraph g(m, std::move(edges));
            if (!is_connected(g)) continue;
            best = std::max(best, count_matrix_tree(g));
        }
    }
    return best;
}

bool criterion_triple_agreement(std::string& detail) {
    const auto start = Clock::now();
    Rng rng(101);
    for (int i = 0; i < 500; ++i) {
        const Multigraph g = random_connected_multigraph(rng, 8, 12);
        const TreeCount dc = count_deletion_contraction(g);
        const TreeCount mt = count_matrix_tree(g);
        const BigInt et = eta(g);
        if (dc != mt || BigInt(dc) != et) {
            detail = "mismatch on case " + std::to_string(i + 1) + ": dc=" + dc.str() +
                     " mt=" + mt.str() + " eta=" + et.str();
            return false;
        }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs >= 60.0) {
        detail = "runtime " + std::to_string(secs) + "s exceeds 60s";
        return false;
    }
    detail = "500 graphs";
    return true;
}

bool criterion_eta_invariance(std::string& detail) {
    std::vector<NamedGraph> corpus;
    for (NamedGraph& c : graph_corpus())
        if (is_connected(c.g)) corpus.push_back(std::move(c));
    if (corpus.size() < 50) {
        detail = "corpus has only " + std::to_string(corpus.size()) + " connected graphs";
        return false;
    }
    corpus.resize(50);

    Rng rng(2024);
    for (const NamedGraph& c : corpus) {
        const BigInt base = eta(c.g);
        for (int draw = 0; draw < 20; ++draw) {
            Multigraph h = permute_vertices(c.g, random_permutation(rng, c.g.vertex_count()));
            h = permute_edges(h, random_permutation(rng, h.edge_count()));
            std::vector<bool> flips;
            for (int e = 0; e < h.edge_count(); ++e) flips.push_back(uniform_int(rng, 0, 1) == 1);
            h = flip_edges(h, flips);

            EtaOptions opt;
            opt.pole = uniform_int(rng, 1, h.vertex_count());
            opt.tree = random_spanning_tree(h, rng);
            std::vector<EdgeId> order;
            for (EdgeId e = 1; e <= h.edge_count(); ++e)
                if (!opt.tree->contains(e)) order.push_back(e);
            std::shuffle(order.begin(), order.end(), rng);
            opt.voltage_row_order = order;

            const BigInt value = eta(h, opt);
            if (value != base) {
                detail = c.name + " draw " + std::to_string(draw + 1) + ": eta " + value.str() +
                         " != " + base.str();
                return false;
            }
        }
    }
    detail = "50 graphs x 20 draws";
    return true;
}

bool criterion_deletion_contraction_identity(std::string& detail) {
    int edges_checked = 0, loops = 0, parallels = 0, triangles = 0;
    for (const NamedGraph& c : graph_corpus()) {
        const Multigraph& g = c.g;
        const TreeCount t = count_matrix_tree(g);

        for (EdgeId e = 1; e <= g.edge_count(); ++e) {
            if (g.is_loop(e)) continue;
            if (t != count_matrix_tree(delete_edge(g, e)) +
                         count_matrix_tree(contract_edge(g, e))) {
                detail = c.name + ": t != t(G\\e) + t(G/e) at edge " + std::to_string(e);
                return false;
            }
            ++edges_checked;
        }

        // loop: deleting it changes nothing
        for (EdgeId e = 1; e <= g.edge_count(); ++e) {
            if (!g.is_loop(e)) continue;
            if (t != count_matrix_tree(delete_edge(g, e))) {
                detail = c.name + ": loop identity fails at edge " + std::to_string(e);
                return false;
            }
            ++loops;
            break;
        }

        // parallel pair: t = t(G minus both) + 2 t(G with the pair contracted)
        for (EdgeId a = 1; a <= g.edge_count(); ++a) {
            if (g.is_loop(a)) continue;
            EdgeId b = 0;
            for (EdgeId e = a + 1; e <= g.edge_count() && b == 0; ++e) {
                const Edge &ea = g.edge(a), &eb = g.edge(e);
                if ((ea.tail == eb.tail && ea.head == eb.head) ||
                    (ea.tail == eb.head && ea.head == eb.tail))
                    b = e;
            }
            if (b == 0) continue;
            if (t != count_matrix_tree(delete_edges(g, {a, b})) +
                         2 * count_matrix_tree(contract_edge(g, a))) {
                detail = c.name + ": parallel identity fails at edges " + std::to_string(a) +
                         "," + std::to_string(b);
                return false;
            }
            ++parallels;
            break;
        }

        // triangle on edges a < b < c with pivot a:
        // t = t(G\a) + t(G/a minus the other two) + 2 t(G with all three contracted)
        bool done = false;
        for (EdgeId a = 1; a <= g.edge_count() && !done; ++a) {
            if (g.is_loop(a)) continue;
            for (EdgeId b = a + 1; b <= g.edge_count() && !done; ++b) {
                if (g.is_loop(b)) continue;
                for (EdgeId e = b + 1; e <= g.edge_count() && !done; ++e) {
                    if (g.is_loop(e)) continue;
                    std::vector<VertexId> vs{g.edge(a).tail, g.edge(a).head,
                                             g.edge(b).tail,  g.edge(b).head,
                                             g.edge(e).tail,  g.edge(e).head};
                    std::sort(vs.begin(), vs.end());
                    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
                    if (vs.size() != 3) continue;
                    // each vertex must meet exactly two of the three edges
                    bool tri = true;
                    for (VertexId v : vs) {
                        int deg = 0;
                        for (EdgeId x : {a, b, e})
                            deg += (g.edge(x).tail == v) + (g.edge(x).head == v);
                        if (deg != 2) tri = false;
                    }
                    if (!tri) continue;

                    const Multigraph ga = contract_edge(g, a);
                    const TreeCount term1 = count_matrix_tree(delete_edge(g, a));
                    const TreeCount term2 = count_matrix_tree(delete_edges(ga, {b - 1, e - 1}));
                    const TreeCount term3 = count_matrix_tree(contract_edge(ga, b - 1));
                    if (t != term1 + term2 + 2 * term3) {
                        detail = c.name + ": triangle identity fails at edges " +
                                 std::to_string(a) + "," + std::to_string(b) + "," +
                                 std::to_string(e);
                        return false;
                    }
                    ++triangles;
                    done = true;
                }
            }
        }
    }
    if (loops == 0 || parallels == 0 || triangles == 0) {
        detail = "corpus misses a case-1 feature (loops=" + std::to_string(loops) +
                 " parallels=" + std::to_string(parallels) +
                 " triangles=" + std::to_string(triangles) + ")";
        return false;
    }
    detail = std::to_string(edges_checked) + " edges, features " + std::to_string(loops) + "/" +
             std::to_string(parallels) + "/" + std::to_string(triangles);
    return true;
}

bool criterion_tau_bound(std::string& detail) {
    int cases = 0;
    auto require_holds = [&cases, &detail](const std::string& name, const Multigraph& g) {
        const BoundVerdict v = check_tau_bound(g);
        if (!v.holds) {
            detail = name + ": t=" + v.tree_count.str() + " not certified below tau^" +
                     std::to_string(v.n);
            return false;
        }
        ++cases;
        return true;
    };

    for (int k = 1; k <= 4; ++k) {
        const EmbeddedGraph grid = grid_graph(k);
        if (!require_holds("grid-" + std::to_string(k), grid.graph)) return false;
        if (!require_holds("dual(grid-" + std::to_string(k) + ")",
                           dual(grid.graph, grid.embedding).graph))
            return false;
    }
    for (int k = 3; k <= 8; ++k)
        if (!require_holds("wheel-" + std::to_string(k), wheel_graph(k).graph)) return false;

    Rng rng(555);
    for (int i = 0; i < 200; ++i) {
        const int k = uniform_int(rng, 2, 4);
        const Multigraph minor = random_grid_minor(rng, k, uniform_int(rng, 3, 18));
        if (!require_holds("grid-minor-" + std::to_string(i + 1), minor)) return false;
    }

    // interval digits at width 1e-30
    TauInterval interval;
    Rational width(1);
    for (int i = 0; i < 30; ++i) width /= 10;
    interval.refine_to_width(width);
    const Rational lo_digits(18637065, 10000000), hi_digits(18637066, 10000000);
    if (!(lo_digits < interval.lo() && interval.hi() < hi_digits)) {
        detail = "interval at 1e-30 does not pin the digits 1.8637065";
        return false;
    }

    // basis anchors: the double edge and the triangle attain mu(2), mu(3)
    if (mu(2) != 2 || mu(3) != 3) {
        detail = "mu(2)=" + mu(2).str() + " mu(3)=" + mu(3).str() + ", expected 2 and 3";
        return false;
    }
    if (!require_holds("double-edge", parse_multigraph("2\n2\n1 2\n1 2"))) return false;
    if (!require_holds("triangle", parse_multigraph(read_file("triangle.mg")))) return false;

    detail = std::to_string(cases) + " certified cases, mu(2)=2, mu(3)=3";
    return true;
}

bool criterion_duality(std::string& detail) {
    int cases = 0;
    for (const NamedEmbedded& e : embedded_corpus()) {
        const Multigraph& g = e.eg.graph;
        const PlanarEmbedding& emb = e.eg.embedding;
        const FaceSet fs = faces(g, emb);
        if (g.edge_count() + 2 != g.vertex_count() + fs.face_count()) {
            detail = e.name + ": Euler check fails";
            return false;
        }
        const DualResult d = dual(g, emb);
        if (d.graph.edge_count() != g.edge_count()) {
            detail = e.name + ": dual edge count differs";
            return false;
        }
        if (count_matrix_tree(g) != count_matrix_tree(d.graph)) {
            detail = e.name + ": t(G) != t(dual)";
            return false;
        }
        if (!short_feature_exists(g, emb)) {
            detail = e.name + ": no vertex or face of length <= 3";
            return false;
        }
        ++cases;
    }
    detail = std::to_string(cases) + " embeddings";
    return true;
}

bool criterion_moron_pipeline(std::string& detail) {
    const auto start = Clock::now();
    const Dissection d = parse_dissection(read_file("moron.sq"));
    if (!validate_dissection(d).valid) {
        detail = "33x32 dissection does not validate";
        return false;
    }
    if (levels(d).size() != 6) {
        detail = "expected 6 levels, got " + std::to_string(levels(d).size());
        return false;
    }
    const SquaringNetwork net = build_network(Squaring(d));
    if (net.graph.edge_count() != 9) {
        detail = "expected 9 network edges";
        return false;
    }
    const NetworkVerdict laws = verify_kirchhoff_laws(net);
    if (!laws.ok() || laws.law.throughput != 33) {
        detail = "Kirchhoff laws or throughput 33 fail";
        return false;
    }
    const WidthSolution sol = solve_widths(net, 33);
    BigInt g = 0;
    for (std::size_t e = 0; e < sol.widths.size(); ++e) {
        const Rational& w = sol.widths[e];
        if (w <= 0 || denominator(w) != 1 || w != net.weights[e]) {
            detail = "recovered width " + std::to_string(e + 1) + " does not match the layout";
            return false;
        }
        g = gcd(g, numerator(w));
    }
    if (g != 1) {
        detail = "recovered sizes are not coprime";
        return false;
    }
    const BoundReport bound = check_bound(d);
    if (!(bound.is_prime && bound.prime_required == 6 && bound.prime_ok)) {
        detail = "certified bound 9 >= ceil(log_tau 33) = 6 fails";
        return false;
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs >= 1.0) {
        detail = "runtime " + std::to_string(secs) + "s exceeds 1s";
        return false;
    }
    detail = "6 levels, 9 edges, throughput 33, widths recovered, bound 9 >= 6";
    return true;
}

bool criterion_transform(std::string& detail) {
    Rng rng(808);
    for (int i = 0; i < 200; ++i) {
        Dissection d = random_guillotine(rng, 40, 4);
        if (!validate_dissection(d).valid) {
            detail = "guillotine case " + std::to_string(i + 1) + " is invalid";
            return false;
        }
        if (!check_bound(d).holds) {
            detail = "bias bound fails on guillotine case " + std::to_string(i + 1);
            return false;
        }
        const long long dd = prime_check(d).d;
        int guard = 0;
        for (;;) {
            std::size_t k = d.tiles.size();
            for (std::size_t j = 0; j < d.tiles.size(); ++j)
                if (!d.tiles[j].is_square()) {
                    k = j;
                    break;
                }
            if (k == d.tiles.size()) break;
            const BigInt before = sum_bias(d);
            const std::size_t tiles_before = d.tiles.size();
            d = inverse_fibonacci_step(d, k);
            if (sum_bias(d) > before) {
                detail = "sum of biases grew on case " + std::to_string(i + 1);
                return false;
            }
            if (prime_check(d).d != dd) {
                detail = "d changed on case " + std::to_string(i + 1);
                return false;
            }
            if (d.tiles.size() != tiles_before + 1) {
                detail = "tile count did not grow by 1 on case " + std::to_string(i + 1);
                return false;
            }
            if (++guard > 200000) {
                detail = "transform did not terminate on case " + std::to_string(i + 1);
                return false;
            }
        }
        if (!validate_dissection(d).valid || !all_square(d)) {
            detail = "transformed case " + std::to_string(i + 1) + " is not a valid squaring";
            return false;
        }
    }

    for (int i = 0; i < 100; ++i) {
        const auto [a, b] = random_coprime_pair(rng, 200);
        const TransformResult t = transform_to_squaring(Dissection{a, b, {Rect{0, 0, a, b}}});
        if (static_cast<long long>(t.result.tiles.size()) != oracle::euclid_quotient_sum(a, b)) {
            detail = std::to_string(a) + "x" + std::to_string(b) + ": " +
                     std::to_string(t.result.tiles.size()) + " squares, oracle says " +
                     std::to_string(oracle::euclid_quotient_sum(a, b));
            return false;
        }
    }
    detail = "200 guillotine cases, 100 coprime rectangles";
    return true;
}

bool criterion_grid_entropy(std::string& detail) {
    const auto start = Clock::now();
    double prev = 0.0;
    double last = 0.0;
    for (int k = 1; k <= 7; ++k) {
        const GridEntropyRow row = grid_entropy(k);
        if (row.ratio <= prev) {
            detail = "ratio not strictly increasing at k=" + std::to_string(k);
            return false;
        }
        if (row.ratio >= row.limit) {
            detail = "ratio exceeds 2C/pi at k=" + std::to_string(k);
            return false;
        }
        prev = row.ratio;
        last = row.ratio;
    }
    if (last <= 0.50) {
        detail = "k=7 ratio " + std::to_string(last) + " is not above 0.50";
        return false;
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs >= 120.0) {
        detail = "runtime " + std::to_string(secs) + "s exceeds 120s";
        return false;
    }
    std::ostringstream s;
    s << "k=1..7 increasing, k=7 ratio " << std::fixed << std::setprecision(4) << last
      << " < 0.5831";
    detail = s.str();
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string label;
        std::function<bool(std::string&)> check;
    };
    const std::vector<Criterion> criteria = {
        {1, "triple agreement dc/mt/eta", criterion_triple_agreement},
        {2, "eta invariance under relabeling and choices", criterion_eta_invariance},
        {3, "deletion-contraction identities", criterion_deletion_contraction_identity},
        {4, "certified tau bound", criterion_tau_bound},
        {5, "planar duality", criterion_duality},
        {6, "33x32 squaring pipeline", criterion_moron_pipeline},
        {7, "bias bound and inverse-Fibonacci transform", criterion_transform},
        {8, "grid entropy", criterion_grid_entropy},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        bool ok = false;
        const auto start = Clock::now();
        try {
            ok = c.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        std::cout << (ok ? "PASS" : "FAIL") << ' ' << c.id << ' ' << c.label << ": " << detail
                  << " [" << std::fixed << std::setprecision(2) << secs << "s]\n";
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
