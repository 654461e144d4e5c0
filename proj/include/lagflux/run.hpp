#pragma once

// Command dispatch: a parsed problem plus a command name produce a
// ResultReport. `bound` is pure case analysis; `verify` additionally runs
// the chord simulator on the family's witness Hamiltonian and reports a
// one-sided certificate with its margin.

#include "lagflux/dynamics.hpp"
#include "lagflux/engine.hpp"
#include "lagflux/io.hpp"
#include "lagflux/svg.hpp"

#include <cmath>

namespace lagflux {

namespace detail_run {

inline ExtRat parse_ext(const std::string& text) {
    if (text == "inf") return ExtRat::infinity();
    return ExtRat(parse_rat(text));
}

inline RationalPolytope polytope_from_block(const KvBlock& b) {
    size_t dim = (size_t)b.integer("dim");
    std::vector<Halfspace> hs;
    for (const auto& [k, v] : b.entries) {
        if (k != "halfspace") continue;
        // "halfspace a,b,...  offset"
        size_t sp = v.find_first_of(" \t");
        if (sp == std::string::npos) throw ParseError("halfspace needs 'normal offset'");
        hs.push_back({parse_int_list(v.substr(0, sp)), parse_rat(v.substr(sp + 1))});
    }
    if (hs.empty()) throw ParseError("polytope block has no halfspaces");
    return RationalPolytope::from_halfspaces(dim, std::move(hs));
}

struct DynParams {
    Rat eps{1, 20}, delta{1, 200}, dt{1, 1000}, t_max{3};
    uint64_t samples = 4096;
};

inline DynParams dyn_params(const KvBlock& pf) {
    DynParams d;
    const KvBlock* b = pf.block("dynamics");
    if (!b) return d;
    d.eps = b->rat_or("eps", d.eps);
    d.delta = b->rat_or("delta", d.delta);
    d.dt = b->rat_or("dt", d.dt);
    d.t_max = b->rat_or("tmax", d.t_max);
    d.samples = (uint64_t)b->integer_or("samples", (long)d.samples);
    return d;
}

}  // namespace detail_run

inline InvariantBound bound_for(const KvBlock& pf) {
    std::string family = pf.need("family");
    if (family == "split") {
        return split_torus_bound(parse_rat_list(pf.need("x")), parse_int_list(pf.need("class")));
    }
    if (family == "chekanov") {
        IntVec cls = parse_int_list(pf.need("class"));
        if (cls.size() != 2) throw ParseError("chekanov class is a pair m,n");
        return chekanov_bound(pf.rat("a"), cls[0], cls[1]);
    }
    if (family == "surface") {
        std::string areas = pf.need("areas");
        // areas: "A+,A-" with inf allowed per side.
        std::vector<std::string> parts;
        std::istringstream in(areas);
        std::string tok;
        while (std::getline(in, tok, ',')) parts.push_back(detail_io::trim(tok));
        if (parts.size() != 2) throw ParseError("areas must be 'A+,A-'");
        return surface_bound(detail_run::parse_ext(parts[0]), detail_run::parse_ext(parts[1]),
                             pf.flag("separating"), Int(pf.integer("k")));
    }
    if (family == "cpn") {
        RatVec x = parse_rat_list(pf.need("x"));
        return cpn_fiber_bound(x.size(), x, parse_int_list(pf.need("class")));
    }
    if (family == "s2s2") {
        return s2s2_fiber_bound(parse_rat_list(pf.need("x")), parse_int_list(pf.need("class")));
    }
    if (family == "toric") {
        const KvBlock* poly = pf.block("polytope");
        if (!poly) throw ParseError("toric family needs a polytope block");
        std::string mode = pf.find("mode") ? pf.need("mode") : "interior_only";
        if (mode != "interior_only" && mode != "full_ambient")
            throw ParseError("mode must be interior_only or full_ambient");
        return toric_fiber_bound(detail_run::polytope_from_block(*poly),
                                 parse_rat_list(pf.need("x")), parse_int_list(pf.need("class")),
                                 mode == "interior_only" ? ToricMode::interior_only
                                                         : ToricMode::full_ambient);
    }
    throw ParseError("unknown family '" + family + "'");
}

inline ResultReport run_bound(const KvBlock& pf) {
    ResultReport rep;
    rep.command = "bound";
    rep.family = pf.need("family");
    rep.inputs = pf.entries;
    rep.bound = bound_for(pf);
    return rep;
}

inline ResultReport run_verify(const KvBlock& pf) {
    ResultReport rep;
    rep.command = "verify";
    rep.family = pf.need("family");
    rep.inputs = pf.entries;
    auto dyn = detail_run::dyn_params(pf);
    double dt = to_double(dyn.dt);
    double eps_d = to_double(dyn.eps);
    double delta_d = to_double(dyn.delta);

    SimCertificate cert;
    cert.dt = dt;
    cert.samples = dyn.samples;

    if (rep.family == "surface") {
        Rat A = pf.rat("A");
        unsigned k = (unsigned)pf.integer("k");
        auto part = surface_model_partition(A, k, dyn.eps);
        SurfaceModel model(part, delta_d);
        StripGeometry geo(part);
        rep.bound = surface_bound(ExtRat(A), ExtRat::infinity(), true, Int(k));
        auto dh = delta_H(model, geo, std::min<uint64_t>(dyn.samples, 4096));
        double t_max = to_double(dyn.t_max);
        auto search = find_chords(model, geo, dyn.samples, t_max, dt);
        cert.model = model.describe();
        cert.delta_h = dh.delta;
        cert.declared_delta = dh.declared_delta;
        cert.declared_error = dh.declared_error;
        cert.t_max = t_max;
        cert.chords_found = search.chords_found;
        cert.min_chord_time = search.min_chord_time;
        cert.escapes = search.escapes;
        cert.flagged = search.flagged;
        cert.margin = 5 * eps_d + 2 * delta_d + 10 * dt;
        double claimed = to_double(A) / k;
        cert.claimed_lower = claimed;
        double horizon = std::isfinite(search.min_chord_time) ? search.min_chord_time : t_max;
        cert.consistent = claimed <= horizon * dh.delta + cert.margin;
        rep.cert = cert;
        return rep;
    }
    if (rep.family == "split") {
        Rat x1 = pf.rat("x1"), xn = pf.rat("xn");
        unsigned k = (unsigned)pf.integer("k");
        Rat C = pf.rat("C");
        auto part = surface_model_partition(xn, k, dyn.eps);
        SplitModel model(part, to_double(x1), to_double(C), delta_d);
        SplitGeometry geo(std::sqrt(to_double(x1)), part);
        RatVec xsplit{x1, xn};
        rep.bound = split_torus_bound(xsplit, IntVec{Int(0), Int(k)});
        auto dh = delta_H(model, geo, std::min<uint64_t>(dyn.samples, 4096));
        double t_max = to_double(dyn.t_max);
        auto search = find_chords(model, geo, dyn.samples, t_max, dt);
        cert.model = model.describe();
        cert.delta_h = dh.delta;
        cert.declared_delta = dh.declared_delta;
        cert.declared_error = dh.declared_error;
        cert.t_max = t_max;
        cert.chords_found = search.chords_found;
        cert.min_chord_time = search.min_chord_time;
        cert.escapes = search.escapes;
        cert.flagged = search.flagged;
        cert.margin = 4 * eps_d + 2 * delta_d + 10 * dt;
        cert.claimed_lower_infinite = true;
        double T_disp = std::sqrt(to_double(x1)) + 10 * dt;
        cert.square_displaced = split_square_displaced(model, geo, T_disp, dt,
                                                       std::min<uint64_t>(dyn.samples, 256),
                                                       1e-3);
        cert.consistent = (search.chords_found == 0) && *cert.square_displaced;
        rep.cert = cert;
        return rep;
    }
    if (rep.family == "chekanov") {
        Rat a = pf.rat("a");
        IntVec cls = parse_int_list(pf.need("class"));
        if (cls.size() != 2 || cls[0] <= 0) throw ParseError("chekanov verify needs class m,n with m > 0");
        unsigned m = (unsigned)(long)cls[0];
        Rat k = pf.rat("k");
        auto quad = chekanov_quadruple(a, m, cls[1], k);
        ChekanovModel model(quad, eps_d, delta_d);
        ChekanovGeometry geo(quad);
        rep.bound = chekanov_bound(a, cls[0], cls[1]);
        auto dh = delta_H(model, geo, std::min<uint64_t>(dyn.samples, 4096));
        double horizon = to_double(a) / m;
        auto conf = chekanov_confinement(model, model.disk_field().boundary_radius(),
                                         model.momentum_plateau(), horizon, dt,
                                         std::min<uint64_t>(dyn.samples, 2048));
        auto search = find_chords(model, geo, dyn.samples, to_double(dyn.t_max), dt);
        cert.model = model.describe();
        cert.delta_h = dh.delta;
        cert.declared_delta = dh.declared_delta;
        cert.declared_error = dh.declared_error;
        cert.t_max = to_double(dyn.t_max);
        cert.chords_found = search.chords_found;
        cert.min_chord_time = search.min_chord_time;
        cert.escapes = search.escapes;
        cert.flagged = search.flagged;
        cert.confinement_max = conf.max_abs_p;
        cert.confinement_bound = model.momentum_plateau();
        cert.margin = 2 * eps_d + 2 * delta_d + 10 * dt;
        double claimed = to_double(a) / m;
        cert.claimed_lower = claimed;
        double observed = std::isfinite(search.min_chord_time) ? search.min_chord_time
                                                               : to_double(dyn.t_max);
        cert.consistent = conf.within && claimed <= observed * dh.delta + cert.margin;
        rep.cert = cert;
        return rep;
    }
    if (rep.family == "custom-model") {
        std::string model_name = pf.need("model");
        if (model_name != "annulus") throw ParseError("unknown custom model '" + model_name + "'");
        unsigned k = (unsigned)pf.integer_or("k", 1);
        auto pair = build_annulus_FG(dyn.eps, k);
        IntervalGeometry geo(pair.partition, 0.0);
        double e = to_double(dyn.eps);
        unsigned grid = (unsigned)pf.integer_or("grid", 200);
        auto est = estimate_pb_upper(*pair.F, *pair.G, geo, {-0.98 * e, -1.0}, {0.98 * e, 1.0},
                                     grid, 1e-4);
        cert.model = "commuting annulus pair";
        cert.delta_h = 1.0;
        cert.declared_delta = 1.0;
        cert.declared_error = 0.0;
        cert.t_max = 0;
        cert.pb_max = est.max_bracket;
        cert.pb_certificate = est.certificate;
        cert.margin = 0;
        cert.claimed_lower_infinite = true;
        cert.consistent = est.commuting;
        rep.bound = surface_bound(ExtRat::infinity(), ExtRat::infinity(), false, Int(k));
        rep.cert = cert;
        return rep;
    }
    throw ParseError("verify supports families surface, split, chekanov, custom-model");
}

inline RegionDiagram diagram_for(const KvBlock& pf) {
    RatVec x = parse_rat_list(pf.need("x"));
    long m_lo = -3, m_hi = 3, n_lo = -3, n_hi = 3;
    if (const std::string* w = pf.find("window")) {
        IntVec v = parse_int_list(*w);
        if (v.size() != 4) throw ParseError("window is m_lo,m_hi,n_lo,n_hi");
        m_lo = (long)v[0];
        m_hi = (long)v[1];
        n_lo = (long)v[2];
        n_hi = (long)v[3];
    }
    return region_diagram(x, Int(m_lo), Int(m_hi), Int(n_lo), Int(n_hi));
}

inline ResultReport run(const std::string& command, const KvBlock& pf) {
    if (command == "bound") return run_bound(pf);
    if (command == "verify") return run_verify(pf);
    throw ParseError("unknown command '" + command + "'");
}

}  // namespace lagflux
