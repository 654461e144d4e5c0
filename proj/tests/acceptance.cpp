// Acceptance gate: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit status is the number of failures.

#include "lagflux/dynamics.hpp"
#include "lagflux/engine.hpp"
#include "lagflux/run.hpp"

#include "oracles.hpp"
#include "properties.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace lagflux;

namespace {

int failures = 0;

void criterion(int n, const std::string& name, const std::function<bool(std::string&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d [%s] %-38s (%.2fs)%s%s\n", n, ok ? "PASS" : "FAIL", name.c_str(),
                secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

bool exact_value(const InvariantBound& b, const Rat& v) {
    return b.is_exact() && b.lower().is_finite() && b.lower().value() == v;
}

bool exact_inf(const InvariantBound& b) { return b.is_exact() && !b.lower().is_finite(); }

}  // namespace

int main() {
    // 1. Case-table reproduction for x = (1,3) over the [-3,3]^2 window.
    criterion(1, "split case table x=(1,3)", [](std::string& detail) {
        RatVec x{Rat(1), Rat(3)};
        auto d = region_diagram(x, Int(-3), Int(3), Int(-3), Int(3));
        auto cell = [&](long m, long n) -> const RegionCell& {
            for (const auto& c : d.cells)
                if (c.m == m && c.n == n) return c;
            throw std::logic_error("missing cell");
        };
        bool ok = exact_value(cell(1, 2).bound, Rat(1));
        ok = ok && exact_inf(cell(0, 1).bound);
        ok = ok && exact_inf(cell(-1, -2).bound);
        ok = ok && cell(1, 0).bound.has_lower() &&
             cell(1, 0).bound.lower() == ExtRat(Rat(1));
        // The whole window agrees with the two-coordinate case analysis:
        // nonpositive classes are infinite, the exact region strictly covers
        // n <= 2m with m > 0, and lower bounds read off min(x_i/m_i).
        for (const auto& c : d.cells) {
            long m = (long)c.m, n = (long)c.n;
            if (m <= 0 && n <= 0) ok = ok && exact_inf(c.bound);
            else if (m == 0 && n >= 1 && Rat(1) < Rat(3) / Rat(n))
                ok = ok && exact_inf(c.bound);
            else if (m > 0 && n - 2 * m <= 0) ok = ok && exact_value(c.bound, Rat(1, m));
            else if (m > 0 && Rat(n) * 1 - Rat(m) * 3 <= 0 && c.bound.has_lower())
                ok = ok && c.bound.lower() == ExtRat(Rat(1, m));
            else if (n > 0 && Rat(n) * 1 - Rat(m) * 3 >= 0 && c.bound.has_lower())
                ok = ok && c.bound.lower() == ExtRat(Rat(3, n));
            else
                ok = false;
        }
        if (!ok) detail = "case table mismatch";
        return ok;
    });

    // 2. Monotone torus x = (2,2).
    criterion(2, "monotone torus x=(2,2)", [](std::string& detail) {
        RatVec x{Rat(2), Rat(2)};
        bool ok = true;
        for (long m = 1; m <= 5; ++m)
            ok = ok && exact_value(split_torus_bound(x, {Int(m), Int(m)}), Rat(2, m));
        for (long m = 1; m <= 5 && ok; ++m)
            for (long n = 1; n <= 5 && ok; ++n) {
                if (m == n) continue;
                auto b = split_torus_bound(x, {Int(m), Int(n)});
                ok = b.has_lower() && b.lower() == ExtRat(Rat(2, std::max(m, n))) &&
                     !b.has_upper();
            }
        if (!ok) detail = "monotone values off";
        return ok;
    });

    // 3. Split C^n exactness cases. The second case realizes the small-
    // coordinate hypothesis x_min < x_i/l with l = 2 (class on a unit-area
    // coordinate of x = (1/3, 1, 1)).
    criterion(3, "split C^n exact cases", [](std::string& detail) {
        bool ok = exact_value(split_torus_bound({Rat(1), Rat(1), Rat(1)},
                                                {Int(2), Int(2), Int(2)}),
                              Rat(1, 2));
        auto b = split_torus_bound({Rat(1, 3), Rat(1), Rat(1)}, {Int(0), Int(1), Int(0)});
        ok = ok && exact_inf(b);
        ok = ok && exact_inf(split_torus_bound({Rat(1, 3), Rat(1), Rat(1)},
                                               {Int(0), Int(2), Int(0)}));
        // The literal coordinate with the minimum does not satisfy the
        // hypothesis and stays one-sided at 1/3.
        auto lit = split_torus_bound({Rat(1, 3), Rat(1), Rat(1)}, {Int(1), Int(0), Int(0)});
        ok = ok && !lit.is_exact() && lit.lower() == ExtRat(Rat(1, 3));
        if (!ok) detail = "exactness cases off";
        return ok;
    });

    // 4. CP^2 fiber with the lattice-scan oracle.
    criterion(4, "CP^2 fiber x=(1/3,1/3) a=(1,1)", [](std::string& detail) {
        RatVec x{Rat(1, 3), Rat(1, 3)};
        auto b = cpn_fiber_bound(2, x, {Int(1), Int(1)});
        bool ok = exact_value(b, Rat(1, 3));
        RatVec dir{Rat(1), Rat(1)};
        ExtRat exit = ray_exit(RationalPolytope::simplex(2), {x, dir});
        auto hit = smallest_shift(x, dir, Rat(1, 2));
        ok = ok && exit.is_finite() && exit.value() == Rat(1, 3) && hit && *hit == Rat(1, 3);
        auto scan = oracles::shift_scan(x, dir, Rat(1, 2));
        ok = ok && scan && *scan == Rat(1, 3);
        if (!ok) detail = "lower/upper/oracle disagree";
        return ok;
    });

    // 5. S^2 x S^2 fibers.
    criterion(5, "S2xS2 fibers", [](std::string& detail) {
        bool ok = exact_value(s2s2_fiber_bound({Rat(1, 2), Rat(1, 2)}, {Int(1), Int(1)}),
                              Rat(1, 2));
        ok = ok && exact_value(s2s2_fiber_bound({Rat(3, 4), Rat(1, 4)}, {Int(1), Int(-1)}),
                               Rat(3, 4));
        if (!ok) detail = "vertex cases off";
        return ok;
    });

    // 6. Surface chord certificate.
    criterion(6, "surface chord certificate", [](std::string& detail) {
        KvBlock pf;
        pf.set("family", "surface");
        pf.set("A", "3");
        pf.set("k", "3");
        KvBlock dyn;
        dyn.name = "dynamics";
        dyn.set("eps", "1/20");
        dyn.set("delta", "1/200");
        dyn.set("dt", "1/1000");
        dyn.set("samples", "4096");
        dyn.set("tmax", "2");
        pf.blocks.push_back(dyn);
        auto rep = run_verify(pf);
        const auto& c = *rep.cert;
        bool ok = std::abs(c.delta_h - 1.0) <= 1e-9;
        ok = ok && c.chords_found > 0 && c.min_chord_time >= 0.75;
        ok = ok && c.consistent;  // A/k = 1 within min_chord * delta + margin
        char buf[160];
        std::snprintf(buf, sizeof buf, "delta_H=%.2e min_chord=%.4f margin=%.3f",
                      c.delta_h - 1.0, c.min_chord_time, c.margin);
        detail = buf;
        return ok;
    });

    // 7. Split-model no-chord certificate.
    criterion(7, "split no-chord certificate", [](std::string& detail) {
        KvBlock pf;
        pf.set("family", "split");
        pf.set("x1", "1");
        pf.set("xn", "3");
        pf.set("k", "1");
        pf.set("C", "2");
        KvBlock dyn;
        dyn.name = "dynamics";
        dyn.set("eps", "1/10");
        dyn.set("delta", "1/200");
        dyn.set("dt", "1/1000");
        dyn.set("samples", "4096");
        dyn.set("tmax", "3");
        pf.blocks.push_back(dyn);
        auto rep = run_verify(pf);
        const auto& c = *rep.cert;
        bool ok = c.chords_found == 0 && c.square_displaced && *c.square_displaced;
        char buf[120];
        std::snprintf(buf, sizeof buf, "chords=%llu displaced=%s",
                      (unsigned long long)c.chords_found,
                      (c.square_displaced && *c.square_displaced) ? "yes" : "no");
        detail = buf;
        return ok;
    });

    // 8. Commuting-pair certificate.
    criterion(8, "commuting annulus pair", [](std::string& detail) {
        auto pair = build_annulus_FG(Rat(1, 2), 1);
        IntervalGeometry geo(pair.partition, 0.0);
        auto est = estimate_pb_upper(*pair.F, *pair.G, geo, {-0.49, -1.0}, {0.49, 1.0}, 200,
                                     1e-4);
        char buf[80];
        std::snprintf(buf, sizeof buf, "max|{F,G}|=%.2e", est.max_bracket);
        detail = buf;
        return est.max_bracket < 1e-8 && est.commuting && std::isinf(est.certificate);
    });

    // 9. Property suites, 10^4 randomized checks each.
    criterion(9, "property suites (5 x 10^4)", [](std::string& detail) {
        long bad_a = properties::ray_exit_homogeneity(10000);
        long bad_b = properties::split_permutation_invariance(10000);
        long bad_c = properties::split_x_homogeneity(10000);
        long bad_d = properties::sandwich_everywhere(10000);
        long bad_e = properties::bracket_antisymmetry(10000);
        char buf[120];
        std::snprintf(buf, sizeof buf, "violations a=%ld b=%ld c=%ld d=%ld e=%ld", bad_a,
                      bad_b, bad_c, bad_d, bad_e);
        detail = buf;
        return bad_a + bad_b + bad_c + bad_d + bad_e == 0;
    });

    // 10. Chekanov confinement and chord floor, eps = 1/12.
    criterion(10, "chekanov confinement + chords", [](std::string& detail) {
        KvBlock pf;
        pf.set("family", "chekanov");
        pf.set("a", "1");
        pf.set("class", "2,1");
        pf.set("k", "9");
        KvBlock dyn;
        dyn.name = "dynamics";
        dyn.set("eps", "1/12");
        dyn.set("delta", "1/200");
        dyn.set("dt", "1/1000");
        dyn.set("samples", "4096");
        dyn.set("tmax", "1");
        pf.blocks.push_back(dyn);
        auto rep = run_verify(pf);
        const auto& c = *rep.cert;
        double floor = 0.5 - 2.0 / 12;
        bool ok = c.confinement_max && *c.confinement_max <= *c.confinement_bound;
        ok = ok && c.chords_found > 0 && c.min_chord_time >= floor;
        ok = ok && c.consistent;
        char buf[160];
        std::snprintf(buf, sizeof buf, "max|p|=%.3f (C=%.1f) min_chord=%.4f floor=%.4f",
                      c.confinement_max ? *c.confinement_max : -1.0,
                      c.confinement_bound ? *c.confinement_bound : -1.0, c.min_chord_time,
                      floor);
        detail = buf;
        return ok;
    });

    std::printf(failures ? "ACCEPTANCE: %d criterion(s) FAILED\n"
                         : "ACCEPTANCE: all criteria passed\n",
                failures);
    return failures;
}
