// lagflux: exact bounds and chord-dynamics certificates for the two
// Lagrangian submanifold invariants, plus region diagrams.
//
// Subcommands:
//   bound    exact case analysis for one family
//   verify   build the family's witness Hamiltonian and run the simulator
//   diagram  emit the split-torus case diagram as SVG
//   selftest quick smoke battery
//
// LAGFLUX_THREADS caps simulator parallelism. All output is UTF-8.

#include "lagflux/run.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace lagflux;

namespace {

struct CommonOpts {
    std::string problem_path;
    bool as_json = false;
};

KvBlock load_or_build(const CommonOpts& opts, const KvBlock& flags) {
    if (!opts.problem_path.empty()) {
        std::ifstream in(opts.problem_path);
        if (!in) throw ParseError("cannot open problem file '" + opts.problem_path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_problem(ss.str());
    }
    return flags;
}

void emit(const ResultReport& rep, bool as_json) {
    if (as_json) std::cout << rep.json().dump(2) << "\n";
    else std::cout << rep.text();
}

int selftest() {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    auto b = split_torus_bound({Rat(1), Rat(3)}, {Int(1), Int(2)});
    check("split (1,3) class (1,2) exact 1", b.is_exact() && b.lower() == ExtRat(Rat(1)));
    b = split_torus_bound({Rat(2), Rat(2)}, {Int(3), Int(3)});
    check("split monotone (3,3) exact 2/3", b.is_exact() && b.lower() == ExtRat(Rat(2, 3)));
    b = cpn_fiber_bound(2, {Rat(1, 3), Rat(1, 3)}, {Int(1), Int(1)});
    check("cpn fiber exact 1/3", b.is_exact() && b.lower() == ExtRat(Rat(1, 3)));
    b = s2s2_fiber_bound({Rat(1, 2), Rat(1, 2)}, {Int(1), Int(1)});
    check("s2s2 fiber exact 1/2", b.is_exact() && b.lower() == ExtRat(Rat(1, 2)));
    b = surface_bound(ExtRat(Rat(2)), ExtRat(Rat(5)), true, Int(-2));
    check("surface areas (2,5) k=-2 exact 5/2", b.is_exact() && b.lower() == ExtRat(Rat(5, 2)));

    auto pair = build_annulus_FG(Rat(1, 2), 1);
    IntervalGeometry geo(pair.partition, 0.0);
    auto est = estimate_pb_upper(*pair.F, *pair.G, geo, {-0.49, -1.0}, {0.49, 1.0}, 60, 1e-4);
    check("annulus pair commutes", est.commuting);

    KvBlock pf;
    pf.set("family", "split");
    pf.set("x", "1,3");
    pf.set("class", "1,2");
    check("problem round-trip", parse_problem(render_problem(pf)) == pf);

    std::cout << (failures ? "selftest: FAILURES\n" : "selftest: all ok\n");
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariant bounds and chord-dynamics certificates"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string family, x, cls, areas, a, k, mode, eps, delta, dt, tmax, x1, xn, C, model,
        window, out_path;
    long samples = 4096, grid = 200;
    bool separating = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--problem", opts.problem_path, "problem file to load");
        sub->add_flag("--json", opts.as_json, "machine-readable output");
    };

    CLI::App* bound = app.add_subcommand("bound", "exact case analysis");
    bound->add_option("--family", family);
    bound->add_option("--x", x, "rational coordinates, comma separated");
    bound->add_option("--class", cls, "integral class, comma separated");
    bound->add_option("--a", a, "area parameter");
    bound->add_option("--areas", areas, "surface areas A+,A- (inf allowed)");
    bound->add_flag("--separating", separating);
    bound->add_option("--k", k, "integer class multiple / rotation count");
    bound->add_option("--mode", mode, "toric mode: interior_only | full_ambient");
    add_common(bound);

    CLI::App* verify = app.add_subcommand("verify", "simulator certificate");
    verify->add_option("--family", family);
    verify->add_option("--A,--a", a, "model area parameter");
    verify->add_option("--k", k);
    verify->add_option("--x1", x1);
    verify->add_option("--xn", xn);
    verify->add_option("--C", C);
    verify->add_option("--class", cls);
    verify->add_option("--model", model, "custom model name (annulus)");
    verify->add_option("--eps", eps);
    verify->add_option("--delta", delta);
    verify->add_option("--dt", dt);
    verify->add_option("--samples", samples);
    verify->add_option("--tmax", tmax);
    verify->add_option("--grid", grid);
    add_common(verify);

    CLI::App* diagram = app.add_subcommand("diagram", "region diagram SVG");
    diagram->add_option("--x", x)->required();
    diagram->add_option("--window", window, "m_lo,m_hi,n_lo,n_hi (default -3,3,-3,3)");
    diagram->add_option("--out", out_path, "output SVG path")->required();
    add_common(diagram);

    CLI::App* st = app.add_subcommand("selftest", "quick smoke battery");
    (void)st;

    CLI11_PARSE(app, argc, argv);

    try {
        if (st->parsed()) return selftest();

        KvBlock pf;
        if (!family.empty()) pf.set("family", family);
        if (!x.empty()) pf.set("x", x);
        if (!cls.empty()) pf.set("class", cls);
        if (!areas.empty()) pf.set("areas", areas);
        if (separating) pf.set("separating", "true");
        if (!k.empty()) pf.set("k", k);
        if (!mode.empty()) pf.set("mode", mode);
        if (!x1.empty()) pf.set("x1", x1);
        if (!xn.empty()) pf.set("xn", xn);
        if (!C.empty()) pf.set("C", C);
        if (!model.empty()) pf.set("model", model);
        if (bound->parsed() && !a.empty()) pf.set("a", a);
        if (verify->parsed()) {
            if (!a.empty()) {
                if (family == "surface") pf.set("A", a);
                else pf.set("a", a);
            }
            pf.set("grid", std::to_string(grid));
            KvBlock dyn;
            dyn.name = "dynamics";
            if (!eps.empty()) dyn.set("eps", eps);
            if (!delta.empty()) dyn.set("delta", delta);
            if (!dt.empty()) dyn.set("dt", dt);
            dyn.set("samples", std::to_string(samples));
            if (!tmax.empty()) dyn.set("tmax", tmax);
            pf.blocks.push_back(dyn);
        }

        if (diagram->parsed()) {
            KvBlock dpf = load_or_build(opts, pf);
            if (!window.empty()) dpf.set("window", window);
            RegionDiagram d = diagram_for(dpf);
            std::ofstream outf(out_path, std::ios::binary);
            if (!outf) throw ParseError("cannot open output '" + out_path + "'");
            render_region_svg(d, outf);
            std::cout << "wrote " << out_path << " (" << d.cells.size() << " cells)\n";
            return 0;
        }

        KvBlock loaded = load_or_build(opts, pf);
        emit(run(bound->parsed() ? "bound" : "verify", loaded), opts.as_json);
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const OutsideDomain& e) {
        std::cerr << "outside domain: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateClass& e) {
        std::cerr << "degenerate class: " << e.what() << "\n";
        return 3;
    } catch (const DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return 3;
    } catch (const InvalidModel& e) {
        std::cerr << "invalid model: " << e.what() << "\n";
        return 4;
    } catch (const InvalidPartition& e) {
        std::cerr << "invalid partition: " << e.what() << "\n";
        return 4;
    } catch (const InvalidPair& e) {
        std::cerr << "invalid pair: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
