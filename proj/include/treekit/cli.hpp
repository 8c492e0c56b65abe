#pragma once

// Command-line front end. Every pipeline stage is a subcommand with
// plain-text/TSV output. Exit codes: 0 success, 1 verification failure
// (bound violated, laws violated, invalid dissection, genus > 0),
// 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "exact.hpp"
#include "generators.hpp"
#include "kirchhoff.hpp"
#include "multigraph.hpp"
#include "planar_dual.hpp"
#include "squaring.hpp"
#include "treecount.hpp"

namespace treekit::cli {

namespace detail {

inline std::string slurp(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

inline std::string fixed10(double value) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(10) << value;
    return s.str();
}

inline std::string fixed4(double value) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << value;
    return s.str();
}

/// Portrait inputs are analyzed in the rotated (landscape) frame, per
/// the levels construction; the caller prints the flag line.
inline bool landscape(Dissection& d) {
    if (d.H <= d.W) return false;
    d = rotate90(d);
    return true;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact spanning-tree counting and squared-rectangle analysis"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int jobs = 1;
    std::string tau_width;
    app.add_option("--seed", seed, "seed for randomized invariance draws");
    app.add_option("--jobs", jobs, "parallel branches for deletion-contraction");
    app.add_option("--tau-width", tau_width, "pre-refine the tau interval to this width");

    std::string file, method = "all", out_path;
    long long solve_n = 0;
    bool no_scale = false;
    int grid_k = 1;

    auto* count_cmd = app.add_subcommand("count", "spanning-tree counts");
    count_cmd->add_option("--method", method, "all, dc, mt, or eta")
        ->check(CLI::IsMember({"all", "dc", "mt", "eta"}));
    count_cmd->add_option("file", file, "multigraph file")->required();

    auto* eta_cmd = app.add_subcommand("eta", "edgewise determinant with sign breakdown");
    eta_cmd->add_option("file", file, "multigraph file")->required();

    auto* bound_cmd = app.add_subcommand("bound", "certified t(G) <= tau^n check");
    bound_cmd->add_option("file", file, "multigraph file")->required();

    auto* dual_cmd = app.add_subcommand("dual", "dual of an embedded multigraph");
    dual_cmd->add_option("file", file, "embedded multigraph file")->required();

    auto* faces_cmd = app.add_subcommand("faces", "faces and Euler check of an embedding");
    faces_cmd->add_option("file", file, "embedded multigraph file")->required();

    auto* grid_cmd = app.add_subcommand("grid", "grid entropy row (TSV)");
    grid_cmd->add_option("k", grid_k, "grid size")->required();

    auto* sq = app.add_subcommand("squaring", "squared-rectangle pipeline");
    sq->require_subcommand(1);
    auto* sq_verify = sq->add_subcommand("verify", "validate and check Kirchhoff laws");
    auto* sq_levels = sq->add_subcommand("levels", "list levels");
    auto* sq_network = sq->add_subcommand("network", "print the level network");
    auto* sq_solve = sq->add_subcommand("solve", "recover widths from topology");
    auto* sq_bound = sq->add_subcommand("bound", "bias lower bound, certified");
    auto* sq_transform = sq->add_subcommand("transform", "inverse-Fibonacci squaring");
    auto* sq_render = sq->add_subcommand("render", "SVG drawing");
    for (CLI::App* s : {sq_verify, sq_levels, sq_network, sq_solve, sq_bound, sq_transform, sq_render})
        s->add_option("file", file, "dissection file")->required();
    sq_solve->add_option("--n", solve_n, "throughput N")->required();
    sq_transform->add_flag("--no-scale", no_scale, "skip the final 1/d scaling");
    sq_render->add_option("-o", out_path, "output SVG path")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        TauInterval interval;
        if (!tau_width.empty()) {
            const Rational w = parse_rational(tau_width);
            if (w <= 0) throw ParseError("--tau-width must be positive");
            interval.refine_to_width(w);
        }

        if (count_cmd->parsed()) {
            const Multigraph g = parse_multigraph(detail::slurp(file));
            if (method == "all") {
                const TreeCount dc = count_deletion_contraction(g, jobs);
                const TreeCount mt = count_matrix_tree(g);
                const BigInt e = eta(g);
                out << "deletion-contraction\t" << dc << '\n';
                out << "matrix-tree\t" << mt << '\n';
                out << "eta\t" << e << '\n';
                if (dc != mt || BigInt(dc) != e) {
                    err << "count mismatch\n";
                    return 1;
                }
            } else if (method == "dc") {
                out << count_deletion_contraction(g, jobs) << '\n';
            } else if (method == "mt") {
                out << count_matrix_tree(g) << '\n';
            } else {
                out << eta(g) << '\n';
            }
            return 0;
        }

        if (eta_cmd->parsed()) {
            const Multigraph g = parse_multigraph(detail::slurp(file));
            if (!is_connected(g)) {
                out << "eta\t0\n";
                out << "disconnected\tyes\n";
                return 0;
            }
            const EtaResult r = eta_detailed(g);
            out << "eta\t" << r.eta << '\n';
            out << "det\t" << r.det << '\n';
            out << "sigma\t" << r.signs.sigma << '\n';
            out << "lambda\t" << r.signs.lambda << '\n';
            out << "rho\t" << r.signs.rho << '\n';
            out << "p\t" << r.signs.p1 << ' ' << r.signs.p2 << ' ' << r.signs.p3 << ' '
                << r.signs.p4 << '\n';
            Rng rng(seed);
            const int draws = 3;
            for (int i = 0; i < draws; ++i) {
                EtaOptions opt;
                opt.pole = uniform_int(rng, 1, g.vertex_count());
                opt.tree = random_spanning_tree(g, rng);
                std::vector<EdgeId> order;
                for (EdgeId e = 1; e <= g.edge_count(); ++e)
                    if (!opt.tree->contains(e)) order.push_back(e);
                std::shuffle(order.begin(), order.end(), rng);
                opt.voltage_row_order = order;
                if (eta_detailed(g, opt).eta != r.eta) {
                    err << "eta invariance violated\n";
                    return 1;
                }
            }
            out << "invariance\tok\tdraws=" << draws << '\n';
            return 0;
        }

        if (bound_cmd->parsed()) {
            const Multigraph g = parse_multigraph(detail::slurp(file));
            const BoundVerdict v = check_tau_bound(g, interval);
            out << "n\t" << v.n << '\n';
            out << "t\t" << v.tree_count << '\n';
            out << "tau_lo\t" << detail::fixed10(to_double(v.lo)) << '\n';
            out << "tau_hi\t" << detail::fixed10(to_double(v.hi)) << '\n';
            out << "bound\t" << (v.holds ? "HOLDS" : "FAILS") << '\n';
            return v.holds ? 0 : 1;
        }

        if (dual_cmd->parsed() || faces_cmd->parsed()) {
            const auto [g, emb] = parse_embedded_multigraph(detail::slurp(file));
            const FaceSet fs = faces(g, emb);
            const bool euler = euler_check(g, emb);
            if (faces_cmd->parsed()) {
                out << "faces\t" << fs.face_count() << '\n';
                out << "euler\t" << (euler ? "OK" : "FAIL") << '\n';
                for (std::size_t i = 0; i < fs.faces.size(); ++i) {
                    out << "face\t" << i + 1 << '\t' << fs.faces[i].size() << '\t';
                    for (std::size_t j = 0; j < fs.faces[i].size(); ++j) {
                        if (j) out << ' ';
                        out << dart_to_string(fs.faces[i][j]);
                    }
                    out << '\n';
                }
                return euler ? 0 : 1;
            }
            if (!euler) {
                err << "embedding is not genus 0\n";
                return 1;
            }
            const DualResult d = dual(g, emb);
            out << "# faces=" << fs.face_count() << '\n';
            out << to_text(d.graph);
            return 0;
        }

        if (grid_cmd->parsed()) {
            const GridEntropyRow row = grid_entropy(grid_k);
            out << row.k << '\t' << row.n << '\t' << row.tree_count << '\t'
                << detail::fixed10(row.ratio) << '\t' << detail::fixed10(row.limit) << '\n';
            return 0;
        }

        // squaring subcommands
        Dissection d = parse_dissection(detail::slurp(file));

        if (sq_render->parsed()) {
            std::ofstream svg(out_path);
            if (!svg) throw ParseError("cannot write '" + out_path + "'");
            svg << render_svg(d);
            out << "wrote\t" << out_path << '\n';
            return 0;
        }

        if (sq_transform->parsed()) {
            const ValidationReport rep = validate_dissection(d);
            if (!rep.valid) {
                err << "invalid dissection: " << rep.message << '\n';
                return 1;
            }
            const TransformResult t = transform_to_squaring(d, !no_scale);
            out << "# steps=" << t.steps << " d=" << t.d << " scaled=" << (t.scaled ? 1 : 0)
                << '\n';
            out << dissection_to_text(t.result);
            return 0;
        }

        if (sq_bound->parsed()) {
            const ValidationReport rep = validate_dissection(d);
            if (!rep.valid) {
                err << "invalid dissection: " << rep.message << '\n';
                return 1;
            }
            const BoundReport b = check_bound(d, interval);
            if (b.is_squaring && b.is_prime)
                out << "tiles=" << b.tile_count << " required>=" << b.prime_required << ' '
                    << (b.prime_ok ? "OK" : "FAIL") << '\n';
            out << "sum_bias=" << b.sum_bias << " max=" << b.max_side << " d=" << b.d
                << " required>=" << b.required << ' ' << (b.holds ? "HOLDS" : "FAILS") << '\n';
            out << "log_tau(" << b.max_side << ") ~= 1.1134*log2(" << b.max_side
                << ") = " << detail::fixed4(b.log2_reference) << '\n';
            const bool ok = b.holds && (!(b.is_squaring && b.is_prime) || b.prime_ok);
            return ok ? 0 : 1;
        }

        // The remaining stages analyze levels; portrait inputs rotate.
        const ValidationReport rep = validate_dissection(d);
        if (!rep.valid) {
            if (sq_verify->parsed()) {
                out << "valid\tno\t" << rep.message << '\n';
                return 1;
            }
            err << "invalid dissection: " << rep.message << '\n';
            return 1;
        }
        const bool rotated = detail::landscape(d);

        if (sq_verify->parsed()) {
            out << "valid\tyes\n";
            if (rotated) out << "rotated\t90\n";
            if (!all_square(d)) {
                out << "squaring\tno\n";
                return 0;
            }
            out << "squaring\tyes\n";
            const Squaring q(d);
            const SquaringNetwork net = build_network(q);
            out << "levels\t" << net.level_list.size() << '\n';
            out << "edges\t" << net.graph.edge_count() << '\n';
            const NetworkVerdict v = verify_kirchhoff_laws(net);
            out << "laws\t" << (v.law.ok() ? "OK" : "FAIL") << '\n';
            out << "throughput\t" << v.law.throughput << '\t' << (v.throughput_ok ? "OK" : "FAIL")
                << '\n';
            return v.ok() ? 0 : 1;
        }

        if (sq_levels->parsed()) {
            if (rotated) out << "rotated\t90\n";
            for (const Level& lv : levels(d))
                out << lv.y << '\t' << lv.x1 << '\t' << lv.x2 << '\n';
            return 0;
        }

        if (!all_square(d)) {
            err << "not a squaring: network stages need square tiles\n";
            return 1;
        }
        const Squaring q(d);
        const SquaringNetwork net = build_network(q);

        if (sq_network->parsed()) {
            if (rotated) out << "rotated\t90\n";
            out << "vertices\t" << net.graph.vertex_count() << '\n';
            out << "edges\t" << net.graph.edge_count() << '\n';
            out << "S\t" << net.source << '\n';
            out << "T\t" << net.sink << '\n';
            for (EdgeId e = 1; e <= net.graph.edge_count(); ++e) {
                const Edge& ed = net.graph.edge(e);
                out << e << '\t' << ed.tail << '\t' << ed.head << '\t'
                    << net.weights[static_cast<std::size_t>(e - 1)] << '\n';
            }
            return 0;
        }

        if (sq_solve->parsed()) {
            if (solve_n < 1) throw ParseError("--n must be positive");
            if (rotated) out << "rotated\t90\n";
            const WidthSolution sol = solve_widths(net, BigInt(solve_n));
            out << "t\t" << sol.tree_count << '\n';
            for (std::size_t e = 0; e < sol.widths.size(); ++e)
                out << e + 1 << '\t' << sol.widths[e] << '\t' << sol.a[e] << '\t' << sol.b[e]
                    << '\n';
            return 0;
        }

        err << "error: no subcommand dispatched\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace treekit::cli
