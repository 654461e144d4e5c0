#pragma once

// Hamiltonian flow integration and chord search. Fixed-step classical RK4
// on the sgrad field with an energy-drift contract: a run whose drift
// exceeds 1e-6 * max(1, |H(z0)|) * T is retried with the step halved, up
// to six times, and flagged if still violating. Region membership at
// crossings uses the closed regions plus a geometric tolerance of
// dt * max-speed; hit times are interpolated within the crossing step.
// Simulation certifies, it does not prove: every certificate produced here
// is one-sided evidence for the specific witness Hamiltonian.

#include "lagflux/hamiltonians.hpp"
#include "lagflux/quadruple.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

namespace lagflux {

inline unsigned worker_threads() {
    if (const char* env = std::getenv("LAGFLUX_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return (unsigned)v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<double> energies;
    bool escaped = false;
    double escape_time = std::numeric_limits<double>::infinity();
    bool energy_flagged = false;
    double max_drift = 0;
    int halvings = 0;
    double dt_used = 0;
};

namespace detail {

inline void rk4_step(const HamiltonianModel& H, State& z, double dt, State& k1, State& k2,
                     State& k3, State& k4, State& tmp) {
    size_t n = z.size();
    H.sgrad(z, k1);
    tmp.resize(n);
    for (size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * dt * k1[i];
    H.sgrad(tmp, k2);
    for (size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * dt * k2[i];
    H.sgrad(tmp, k3);
    for (size_t i = 0; i < n; ++i) tmp[i] = z[i] + dt * k3[i];
    H.sgrad(tmp, k4);
    for (size_t i = 0; i < n; ++i)
        z[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
}

// One fixed-step run; on_step may stop early. Returns false when the energy
// contract failed (caller halves dt and retries).
template <typename OnStep>
inline bool run_once(const HamiltonianModel& H, const State& z0, double T, double dt,
                     double tol, Trajectory& out, OnStep&& on_step) {
    State z = z0, prev = z0;
    State k1, k2, k3, k4, tmp;
    double H0 = H.value(z);
    out.max_drift = 0;
    out.escaped = false;
    out.escape_time = std::numeric_limits<double>::infinity();
    long steps = (long)std::ceil(T / dt - 1e-12);
    double t = 0;
    for (long s = 0; s < steps; ++s) {
        prev = z;
        double step = std::min(dt, T - t);
        rk4_step(H, z, step, k1, k2, k3, k4, tmp);
        H.normalize(z);
        t += step;
        if (!H.in_domain(z)) {
            out.escaped = true;
            out.escape_time = t;
            return true;
        }
        double drift = std::abs(H.value(z) - H0);
        out.max_drift = std::max(out.max_drift, drift);
        if (drift > tol) return false;
        if (on_step(t, prev, z, step)) return true;
    }
    return true;
}

}  // namespace detail

// Integrate and (optionally) record the trajectory at every accepted step.
inline Trajectory integrate(const HamiltonianModel& H, const State& z0, double T, double dt,
                            bool record = true) {
    if (z0.size() != H.dim()) throw DimensionError("initial state dimension mismatch");
    if (!H.in_domain(z0)) throw OutsideDomain("initial state outside the model domain");
    if (!(T > 0) || !(dt > 0)) throw std::domain_error("need positive horizon and step");
    double tol = 1e-6 * std::max(1.0, std::abs(H.value(z0))) * T;
    Trajectory traj;
    double step = dt;
    for (int attempt = 0; attempt <= 6; ++attempt) {
        traj = Trajectory{};
        traj.halvings = attempt;
        traj.dt_used = step;
        if (record) {
            traj.times.push_back(0);
            traj.states.push_back(z0);
            traj.energies.push_back(H.value(z0));
        }
        bool ok = detail::run_once(H, z0, T, step, tol, traj,
                                   [&](double t, const State&, const State& z, double) {
                                       if (record) {
                                           traj.times.push_back(t);
                                           traj.states.push_back(z);
                                           traj.energies.push_back(H.value(z));
                                       }
                                       return false;
                                   });
        if (ok) return traj;
        step *= 0.5;
    }
    traj.energy_flagged = true;
    return traj;
}

struct ChordReport {
    uint64_t start_index = 0;
    State start;
    bool hit = false;
    double hit_time = std::numeric_limits<double>::infinity();
    bool escaped = false;
    bool energy_flagged = false;
    double max_drift = 0;
    std::vector<double> coord_max_abs;
};

struct ChordSearch {
    std::vector<ChordReport> reports;
    double min_chord_time = std::numeric_limits<double>::infinity();
    uint64_t chords_found = 0;
    uint64_t escapes = 0;
    uint64_t flagged = 0;
    double t_max = 0;
    double geom_tol = 0;
};

// Deterministic low-discrepancy chord search from X0 into X1. Trajectory
// batches run in parallel (capped by LAGFLUX_THREADS) and merge by index.
inline ChordSearch find_chords(const HamiltonianModel& H, const QuadrupleGeometry& quad,
                               uint64_t samples, double T_max, double dt) {
    if (!(T_max > 0) || !(dt > 0)) throw std::domain_error("need positive horizon and step");
    ChordSearch result;
    result.t_max = T_max;
    result.geom_tol = dt * H.max_speed();
    result.reports.resize(samples);

    auto work = [&](uint64_t i) {
        ChordReport rep;
        rep.start_index = i;
        rep.start = quad.sample(RegionName::X0, i, samples);
        rep.coord_max_abs.assign(H.dim(), 0.0);
        double tol = 1e-6 * std::max(1.0, std::abs(H.value(rep.start))) * T_max;
        double step = dt;
        for (int attempt = 0; attempt <= 6; ++attempt) {
            Trajectory scratch;
            rep.hit = false;
            rep.hit_time = std::numeric_limits<double>::infinity();
            for (double& m : rep.coord_max_abs) m = 0;
            bool ok = detail::run_once(
                H, rep.start, T_max, step, tol, scratch,
                [&](double t, const State& prev, const State& z, double used) {
                    for (size_t c = 0; c < z.size(); ++c)
                        rep.coord_max_abs[c] = std::max(rep.coord_max_abs[c], std::abs(z[c]));
                    // dt times the local speed: the displacement of this step.
                    double local = 0;
                    for (size_t c = 0; c < z.size(); ++c)
                        local += (z[c] - prev[c]) * (z[c] - prev[c]);
                    double tol_local = std::max(std::sqrt(local), 1e-12);
                    double d_now = quad.distance(RegionName::X1, z);
                    double d_prev = quad.distance(RegionName::X1, prev);
                    if (std::min(d_now, d_prev) > tol_local) return false;
                    // Ternary search for the nearest point of the step
                    // segment; a transversal crossing reaches the region.
                    double lo = 0, hi = 1;
                    State mid(z.size());
                    auto dist_at = [&](double mu) {
                        for (size_t c = 0; c < z.size(); ++c)
                            mid[c] = prev[c] + mu * (z[c] - prev[c]);
                        return quad.distance(RegionName::X1, mid);
                    };
                    for (int it2 = 0; it2 < 48; ++it2) {
                        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
                        if (dist_at(m1) <= dist_at(m2)) hi = m2;
                        else lo = m1;
                    }
                    double mu = 0.5 * (lo + hi);
                    double reach = dist_at(mu);
                    if (reach > std::max(1e-7, 0.05 * tol_local)) return false;
                    rep.hit = true;
                    rep.hit_time = t - used + mu * used;
                    return true;
                });
            rep.escaped = scratch.escaped;
            rep.max_drift = scratch.max_drift;
            if (ok) return rep;
            step *= 0.5;
        }
        rep.energy_flagged = true;
        return rep;
    };

    unsigned threads = std::min<unsigned>(worker_threads(), 16);
    if (threads <= 1 || samples < 2 * threads) {
        for (uint64_t i = 0; i < samples; ++i) result.reports[i] = work(i);
    } else {
        std::atomic<uint64_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    uint64_t i = next.fetch_add(1);
                    if (i >= samples) return;
                    result.reports[i] = work(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    for (const auto& rep : result.reports) {
        if (rep.hit) {
            ++result.chords_found;
            result.min_chord_time = std::min(result.min_chord_time, rep.hit_time);
        }
        if (rep.escaped) ++result.escapes;
        if (rep.energy_flagged) ++result.flagged;
    }
    return result;
}

struct DeltaReport {
    double min_y1 = 0;
    double max_y0 = 0;
    double delta = 0;
    double declared_delta = 0;
    double declared_error = 0;
};

// Delta_H = min over sampled Y1 of H minus max over sampled Y0 of H.
inline DeltaReport delta_H(const HamiltonianModel& H, const QuadrupleGeometry& quad,
                           uint64_t samples) {
    if (samples == 0) throw InvalidModel("empty region sampling");
    DeltaReport rep;
    rep.min_y1 = std::numeric_limits<double>::infinity();
    rep.max_y0 = -std::numeric_limits<double>::infinity();
    for (uint64_t i = 0; i < samples; ++i) {
        rep.min_y1 = std::min(rep.min_y1, H.value(quad.sample(RegionName::Y1, i, samples)));
        rep.max_y0 = std::max(rep.max_y0, H.value(quad.sample(RegionName::Y0, i, samples)));
    }
    rep.delta = rep.min_y1 - rep.max_y0;
    rep.declared_delta = H.declared_y1 - H.declared_y0;
    rep.declared_error = std::max(std::abs(rep.min_y1 - H.declared_y1),
                                  std::abs(rep.max_y0 - H.declared_y0));
    return rep;
}

struct PbEstimate {
    double max_bracket = 0;
    bool commuting = false;        // below the zero threshold
    double certificate = 0;        // 1/max, +inf when commuting
    double grid_h = 0;
};

// Max of the finite-difference bracket of an admissible pair over a grid in
// the rectangle [lo, hi]^dims; a valid pair's max bounds pb4+ from above,
// so 1/max is a lower-bound certificate for the inverse invariant.
inline PbEstimate estimate_pb_upper(const HamiltonianModel& F, const HamiltonianModel& G,
                                    const QuadrupleGeometry& quad, const State& lo,
                                    const State& hi, unsigned grid, double fd_h) {
    // Constraint check by sampling the quadruple.
    const double ctol = 1e-9;
    for (uint64_t i = 0; i < 256; ++i) {
        if (F.value(quad.sample(RegionName::X0, i, 256)) > ctol)
            throw InvalidPair("F exceeds 0 on X0");
        if (F.value(quad.sample(RegionName::X1, i, 256)) < 1 - ctol)
            throw InvalidPair("F below 1 on X1");
        if (G.value(quad.sample(RegionName::Y0, i, 256)) > ctol)
            throw InvalidPair("G exceeds 0 on Y0");
        if (G.value(quad.sample(RegionName::Y1, i, 256)) < 1 - ctol)
            throw InvalidPair("G below 1 on Y1");
    }
    PbEstimate est;
    est.grid_h = fd_h;
    size_t dims = lo.size();
    std::vector<unsigned> idx(dims, 0);
    State z(dims);
    for (;;) {
        for (size_t d = 0; d < dims; ++d)
            z[d] = lo[d] + (hi[d] - lo[d]) * ((double)idx[d] + 0.5) / (double)grid;
        if (F.in_domain(z) && G.in_domain(z))
            est.max_bracket = std::max(est.max_bracket, poisson_bracket(F, G, z, fd_h));
        size_t d = 0;
        for (; d < dims; ++d) {
            if (++idx[d] < grid) break;
            idx[d] = 0;
        }
        if (d == dims) break;
    }
    est.commuting = est.max_bracket < 1e-8;
    est.certificate = est.commuting ? std::numeric_limits<double>::infinity()
                                    : 1.0 / est.max_bracket;
    return est;
}

// Image of the square boundary under the time-T flow, against itself: the
// split model's no-chord mechanism in the (p_1, q_1) plane.
inline bool split_square_displaced(const HamiltonianModel& H, const SplitGeometry& quad,
                                   double T, double dt, uint64_t samples, double tol) {
    for (uint64_t i = 0; i < samples; ++i) {
        auto pq = quad.square().at(van_der_corput(i));
        State z{pq[0], pq[1], 0.123456, 0.5};  // strip factor parked off the arcs
        Trajectory tr = integrate(H, z, T, dt, true);
        const State& end = tr.states.back();
        if (quad.square().distance(end[0], end[1]) <= tol) return false;
    }
    return true;
}

struct ConfinementReport {
    double max_abs_p = 0;
    uint64_t samples = 0;
    bool within = false;
};

// Chekanov confinement: trajectories from the boundary circle at p = 0 stay
// in |p| <= bound over [0, T].
inline ConfinementReport chekanov_confinement(const ChekanovModel& H, double boundary_radius,
                                              double bound, double T, double dt,
                                              uint64_t samples) {
    ConfinementReport rep;
    rep.samples = samples;
    for (uint64_t i = 0; i < samples; ++i) {
        double xi = van_der_corput(i, 2);
        double theta = van_der_corput(i, 3);
        State z{boundary_radius * std::cos(2 * std::numbers::pi * xi),
                boundary_radius * std::sin(2 * std::numbers::pi * xi), 0.0, theta};
        Trajectory scratch;
        double tol = 1e-6 * std::max(1.0, std::abs(H.value(z))) * T;
        detail::run_once(H, z, T, dt, tol, scratch,
                         [&](double, const State&, const State& s, double) {
                             rep.max_abs_p = std::max(rep.max_abs_p, std::abs(s[2]));
                             return false;
                         });
    }
    rep.within = rep.max_abs_p <= bound;
    return rep;
}

}  // namespace lagflux
