#pragma once

// The explicit Hamiltonians behind the constructive lower bounds, as
// evaluable fields with gradients. Phase coordinates are Darboux pairs
// (p_1, q_1, p_2, q_2, ...) with omega = sum dp_i ^ dq_i; the Hamiltonian
// vector field follows from i_{sgrad H} omega = -dH, i.e. componentwise
// dp_i/dt = -dH/dq_i and dq_i/dt = +dH/dp_i. The Poisson bracket convention
// is {F,G} = dF(sgrad G) = sum (dF/dq_i dG/dp_i - dF/dp_i dG/dq_i).

#include "lagflux/chekanov_field.hpp"
#include "lagflux/errors.hpp"
#include "lagflux/profiles.hpp"
#include "lagflux/quadruple.hpp"
#include "lagflux/rational.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

namespace lagflux {

using State = std::vector<double>;

class HamiltonianModel {
  public:
    virtual ~HamiltonianModel() = default;
    virtual size_t dim() const = 0;  // even
    virtual double value(const State& z) const = 0;
    virtual void gradient(const State& z, State& out) const = 0;
    virtual bool in_domain(const State& z) const { return true; }
    // Wrap periodic coordinates back into their fundamental window.
    virtual void normalize(State&) const {}
    virtual double max_speed() const = 0;
    virtual std::string describe() const = 0;

    // Declared constants on the Y regions of the bound quadruple.
    double declared_y0 = 0.0;
    double declared_y1 = 1.0;

    void sgrad(const State& z, State& out) const {
        gradient(z, out);
        for (size_t i = 0; i + 1 < out.size(); i += 2) {
            double dp = out[i], dq = out[i + 1];
            out[i] = -dq;
            out[i + 1] = dp;
        }
    }
};

// Central finite-difference Poisson bracket at z; antisymmetric up to O(h^2).
inline double poisson_bracket(const HamiltonianModel& F, const HamiltonianModel& G,
                              const State& z, double h) {
    if (F.dim() != G.dim() || z.size() != F.dim())
        throw DimensionError("poisson bracket needs matching phase spaces");
    if (!F.in_domain(z) || !G.in_domain(z))
        throw OutsideDomain("poisson bracket point outside a model domain");
    if (h <= 0) throw std::domain_error("finite-difference step must be positive");
    auto partial = [&](const HamiltonianModel& M, size_t i) {
        State zp = z, zm = z;
        zp[i] += h;
        zm[i] -= h;
        return (M.value(zp) - M.value(zm)) / (2 * h);
    };
    double acc = 0;
    for (size_t i = 0; i + 1 < z.size(); i += 2) {
        acc += partial(F, i + 1) * partial(G, i) - partial(F, i) * partial(G, i + 1);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Surface strip model G on Q_eps(A): a profile in x times a y-cutoff that is
// identically 1 over the strip, so G depends only on x inside Q(A), vanishes
// on the Y0 edge/arcs, equals 1 on the Y1 edge/arcs, and has compact support.

class SurfaceModel final : public HamiltonianModel {
  public:
    SurfaceModel(const SurfacePartition& part, double delta)
        : A_(to_double(part.A)), eps_(to_double(part.eps)), delta_(delta) {
        if (!(A_ / part.k - 4 * eps_ > 0)) throw InvalidModel("need A/k - 4 eps > 0");
        if (!(delta_ < eps_ / 4) || delta_ <= 0) throw InvalidModel("need 0 < delta < eps/4");
        profile_ = build_profile(part, delta_);
        cutoff_ = build_cutoff(eps_, delta_);
        slope_cap_ = 1.0 / (A_ / part.k - 4 * eps_);
        x1_slope_ = x1_ramp_slope(part, delta_);
        if (!(x1_slope_ < slope_cap_))
            throw InvalidModel("smoothed slope on the X1 shadow exceeds the certified cap");
    }

    size_t dim() const override { return 2; }
    double value(const State& z) const override { return profile_(z[0]) * cutoff_(z[1]); }
    void gradient(const State& z, State& out) const override {
        out.assign(2, 0.0);
        out[0] = profile_.deriv(z[0]) * cutoff_(z[1]);
        out[1] = profile_(z[0]) * cutoff_.deriv(z[1]);
    }
    bool in_domain(const State& z) const override {
        return z[0] > -eps_ && z[0] < A_ + eps_ && z[1] > -eps_ && z[1] < 1 + eps_;
    }
    double max_speed() const override {
        return std::hypot(profile_.max_abs_slope(), cutoff_.max_abs_slope());
    }
    std::string describe() const override { return "surface strip profile"; }

    double x1_shadow_slope() const { return x1_slope_; }
    double slope_cap() const { return slope_cap_; }
    const Profile& profile() const { return profile_; }

  private:
    double A_, eps_, delta_, slope_cap_ = 0, x1_slope_ = 0;
    Profile profile_, cutoff_;

    // Ramps inset by 2*delta inside the X arcs so the smoothed profile is
    // exactly 0/1 on neighborhoods of the Y arcs and edges.
    static Profile build_profile(const SurfacePartition& p, double delta) {
        std::vector<double> xs, ys;
        double cur = 0.0;
        xs.push_back(-2 * delta);
        ys.push_back(0.0);
        for (const auto& iv : p.top) {
            double lo = to_double(iv.lo), hi = to_double(iv.hi);
            if (iv.label == RegionName::X1 || iv.label == RegionName::X0) {
                double target = (iv.label == RegionName::X1) ? 1.0 : 0.0;
                xs.push_back(lo + 2 * delta);
                ys.push_back(cur);
                xs.push_back(hi - 2 * delta);
                ys.push_back(target);
                cur = target;
            }
        }
        // Right closure: hold 1 past the edge, then drop inside the collar.
        double A = to_double(p.A), eps = to_double(p.eps);
        xs.push_back(A + eps * 0.4);
        ys.push_back(cur);
        xs.push_back(A + eps * 0.7);
        ys.push_back(0.0);
        return Profile(xs, ys, delta);
    }

    static Profile build_cutoff(double eps, double delta) {
        std::vector<double> xs{-0.7 * eps, -0.25 * eps, 1 + 0.25 * eps, 1 + 0.7 * eps};
        std::vector<double> ys{0.0, 1.0, 1.0, 0.0};
        return Profile(xs, ys, delta);
    }

    // Slope of the smoothed profile over the X1 shadow columns only; the
    // certified chord-time bound depends on nothing else.
    static double x1_ramp_slope(const SurfacePartition& p, double delta) {
        double worst = 0;
        for (const auto& iv : p.top) {
            if (iv.label != RegionName::X1) continue;
            double len = to_double(iv.hi - iv.lo) - 4 * delta;
            worst = std::max(worst, 1.0 / len);
        }
        return worst;
    }
};

// ---------------------------------------------------------------------------
// Split model H(p, q) = p_1 + G(p_n) on the reduced (p_1, q_1, p_n, q_n)
// coordinates; the remaining factors are flow-invariant and carry no
// dynamics. Complete: constant slopes at infinity.

class SplitModel final : public HamiltonianModel {
  public:
    SplitModel(const SurfacePartition& part, double x1, double C, double delta)
        : x1_(x1), C_(C) {
        double xn = to_double(part.A);
        double eps = to_double(part.eps);
        double side = std::sqrt(x1);
        if (!((xn / part.k - 4 * eps) / side > C && C > side))
            throw InvalidModel("no admissible constant: need (x_n/k - 4 eps)/sqrt(x1) > C > sqrt(x1)");
        if (!(delta > 0) || !(delta < eps / 4)) throw InvalidModel("need 0 < delta < eps/4");
        profile_ = build_profile(part, C, delta);
        declared_y0 = side;  // max over Y0 of p_1 + 0
        declared_y1 = C;     // min over Y1 of 0 + C
    }

    size_t dim() const override { return 4; }
    double value(const State& z) const override { return z[0] + profile_(z[2]); }
    void gradient(const State& z, State& out) const override {
        out.assign(4, 0.0);
        out[0] = 1.0;
        out[2] = profile_.deriv(z[2]);
    }
    double max_speed() const override { return std::hypot(1.0, profile_.max_abs_slope()); }
    std::string describe() const override { return "split translation + strip profile"; }

    const Profile& profile() const { return profile_; }

  private:
    double x1_, C_;
    Profile profile_;

    static Profile build_profile(const SurfacePartition& p, double C, double delta) {
        std::vector<double> xs, ys;
        double cur = 0.0;
        xs.push_back(-1.0);
        ys.push_back(0.0);
        for (const auto& iv : p.top) {
            double lo = to_double(iv.lo), hi = to_double(iv.hi);
            if (iv.label == RegionName::X1 || iv.label == RegionName::X0) {
                double target = (iv.label == RegionName::X1) ? C : 0.0;
                xs.push_back(lo + 2 * delta);
                ys.push_back(cur);
                xs.push_back(hi - 2 * delta);
                ys.push_back(target);
                cur = target;
            }
        }
        double xn = to_double(p.A);
        xs.push_back(xn + 1.0);
        ys.push_back(cur);  // constant C beyond the right edge: complete
        return Profile(xs, ys, delta);
    }
};

// ---------------------------------------------------------------------------
// Commuting annulus pair on Z_eps = (-eps, eps) x ([-1,1]/~): both depend
// only on x, so {F, G} vanishes identically.

class AnnulusModel final : public HamiltonianModel {
  public:
    AnnulusModel(Profile profile, double eps) : profile_(std::move(profile)), eps_(eps) {}

    size_t dim() const override { return 2; }
    double value(const State& z) const override { return profile_(z[0]); }
    void gradient(const State& z, State& out) const override {
        out.assign(2, 0.0);
        out[0] = profile_.deriv(z[0]);
    }
    bool in_domain(const State& z) const override { return std::abs(z[0]) < eps_; }
    void normalize(State& z) const override {
        // y lives on [-1, 1) with period 2.
        z[1] = z[1] - 2.0 * std::floor((z[1] + 1.0) / 2.0);
    }
    double max_speed() const override { return profile_.max_abs_slope(); }
    std::string describe() const override { return "annulus x-profile"; }

  private:
    Profile profile_;
    double eps_;
};

struct AnnulusPair {
    std::shared_ptr<AnnulusModel> F, G;
    std::vector<LabeledInterval> partition;
};

// F: 0 on the X0 arcs, 1 on the X1 arcs, ramps inside the Y arcs.
// G: 0 on the Y0 arcs, 1 on the Y1 arcs, ramps inside the X arcs; both
// vanish near the annulus ends. Equalities hold on neighborhoods.
inline AnnulusPair build_annulus_FG(const Rat& eps, unsigned k, double delta_frac = 0.05) {
    auto arcs = annulus_partition(eps, k);
    double width = to_double(arcs[0].hi - arcs[0].lo);
    double delta = delta_frac * width;
    double e = to_double(eps);

    // The profile is pinned to 0/1 on the named arcs; each transition ramp
    // lives strictly inside the free arc between two pinned ones, inset by
    // 2*delta so the smoothed profile is exactly 0/1 on neighborhoods.
    auto build = [&](RegionName zero_on, RegionName one_on) {
        std::vector<double> xs, ys;
        double cur = 0.0;
        double prev_end = -e + 0.1 * width;  // compact support: zero at the left end
        xs.push_back(-e);
        ys.push_back(0.0);
        for (const auto& iv : arcs) {
            if (iv.label != zero_on && iv.label != one_on) continue;
            double lo = to_double(iv.lo), hi = to_double(iv.hi);
            double target = (iv.label == one_on) ? 1.0 : 0.0;
            if (target != cur) {
                xs.push_back(prev_end + 2 * delta);
                ys.push_back(cur);
                xs.push_back(lo - 2 * delta);
                ys.push_back(target);
                cur = target;
            }
            prev_end = hi;
        }
        if (cur != 0.0) {  // compact support: ramp back down before the right end
            xs.push_back(prev_end + 2 * delta);
            ys.push_back(cur);
            xs.push_back(e - 0.1 * width);
            ys.push_back(0.0);
        } else {
            xs.push_back(e);
            ys.push_back(0.0);
        }
        return Profile(xs, ys, delta);
    };

    AnnulusPair pair;
    pair.partition = arcs;
    // F ramps happen across Y arcs (where F is free), G ramps across X arcs.
    pair.F = std::make_shared<AnnulusModel>(build(RegionName::X0, RegionName::X1), e);
    pair.G = std::make_shared<AnnulusModel>(build(RegionName::Y0, RegionName::Y1), e);
    pair.F->declared_y0 = 0;
    pair.F->declared_y1 = 1;
    pair.G->declared_y0 = 0;
    pair.G->declared_y1 = 1;
    return pair;
}

// ---------------------------------------------------------------------------
// Chekanov model H(x, y, p, theta) = G(R(-n theta)(x, y)) * beta(p) on
// D(k) x T*_k S^1, coordinates ordered (x, y, p, theta). beta is 1 on
// |p| <= C with C = max(4a|n|, 1) and drops to 0 before |p| = k.

class ChekanovModel final : public HamiltonianModel {
  public:
    ChekanovModel(const ChekanovQuadruple& quad, double epsilon, double delta)
        : a_(to_double(quad.a)),
          m_(quad.m),
          n_((long)quad.n),
          k_(to_double(quad.k)),
          epsilon_(epsilon),
          field_(to_double(quad.a), quad.m, to_double(quad.k)) {
        C_ = std::max(4.0 * a_ * std::abs((double)n_), 1.0);
        if (!(k_ > C_)) throw InvalidModel("cutoff plateau does not fit: need k > max(4a|n|,1)");
        double fall = std::min(1.0, 0.8 * (k_ - C_));
        double d = std::min(delta, 0.1 * fall);
        if (d <= 0) throw InvalidModel("need delta > 0");
        beta_ = Profile({0.0, C_ + 0.1 * fall, C_ + 0.9 * fall},
                        {1.0, 1.0, 0.0}, d);
        double target = a_ / (double)m_ - 2.0 * epsilon_;
        if (field_.certified_min_chord_time() < target)
            throw InvalidModel("epsilon too small: certified chord time misses a/m - 2 eps");
        double cap = 4.0 * (double)m_ / std::sqrt(a_);
        grad_cert_ = field_.sampled_max_gradient();
        if (grad_cert_ > cap) throw InvalidModel("sector gradient bound violated");
        declared_y0 = 0.0;
        declared_y1 = 1.0;
    }

    size_t dim() const override { return 4; }

    double value(const State& z) const override {
        double w1, w2;
        corotate(z, w1, w2);
        return field_.value(w1, w2) * beta_(std::abs(z[2]));
    }

    void gradient(const State& z, State& out) const override {
        out.assign(4, 0.0);
        double c = std::cos(2 * std::numbers::pi * (double)n_ * z[3]);
        double s = std::sin(2 * std::numbers::pi * (double)n_ * z[3]);
        double w1 = c * z[0] + s * z[1];
        double w2 = -s * z[0] + c * z[1];
        double g, gx, gy;
        field_.eval(w1, w2, g, gx, gy);
        double b = beta_(std::abs(z[2]));
        double bp = beta_.deriv(std::abs(z[2])) * (z[2] < 0 ? -1.0 : 1.0);
        out[0] = b * (gx * c - gy * s);
        out[1] = b * (gx * s + gy * c);
        out[2] = g * bp;
        out[3] = b * 2 * std::numbers::pi * (double)n_ * (gx * w2 - gy * w1);
    }

    bool in_domain(const State& z) const override {
        double I = std::numbers::pi * (z[0] * z[0] + z[1] * z[1]);
        return I < k_ && std::abs(z[2]) < k_;
    }
    void normalize(State& z) const override { z[3] -= std::floor(z[3]); }

    double max_speed() const override {
        double gmax = grad_cert_;
        double pdot = 2 * std::numbers::pi * std::abs((double)n_) * gmax *
                      std::sqrt(a_ / std::numbers::pi) * 1.5;
        double thetadot = beta_.max_abs_slope();
        return std::sqrt(gmax * gmax + pdot * pdot + thetadot * thetadot);
    }
    std::string describe() const override { return "rotating sector profile x cutoff"; }

    double certified_min_chord_time() const { return field_.certified_min_chord_time(); }
    double momentum_plateau() const { return C_; }
    double sampled_gradient_max() const { return grad_cert_; }
    double gradient_cap() const { return 4.0 * (double)m_ / std::sqrt(a_); }
    const ChekanovDiskField& disk_field() const { return field_; }

  private:
    double a_, k_, C_, epsilon_, grad_cert_ = 0;
    unsigned m_;
    long n_;
    ChekanovDiskField field_;
    Profile beta_;

    void corotate(const State& z, double& w1, double& w2) const {
        double c = std::cos(2 * std::numbers::pi * (double)n_ * z[3]);
        double s = std::sin(2 * std::numbers::pi * (double)n_ * z[3]);
        w1 = c * z[0] + s * z[1];
        w2 = -s * z[0] + c * z[1];
    }
};

// ---------------------------------------------------------------------------
// Builders taking exact inputs, mirroring the problem-file parameters.

inline std::shared_ptr<SurfaceModel> build_surface_G(const Rat& A, unsigned k, const Rat& eps,
                                                     const Rat& delta) {
    auto part = surface_model_partition(A, k, eps);
    return std::make_shared<SurfaceModel>(part, to_double(delta));
}

inline std::shared_ptr<SplitModel> build_split_H(const Rat& x1, const Rat& xn, unsigned k,
                                                 const Rat& eps, const Rat& C,
                                                 const Rat& delta) {
    auto part = surface_model_partition(xn, k, eps);
    return std::make_shared<SplitModel>(part, to_double(x1), to_double(C), to_double(delta));
}

inline std::shared_ptr<ChekanovModel> build_chekanov_H(const Rat& a, unsigned m, const Int& n,
                                                       const Rat& k, const Rat& eps,
                                                       const Rat& delta) {
    auto quad = chekanov_quadruple(a, m, n, k);
    return std::make_shared<ChekanovModel>(quad, to_double(eps), to_double(delta));
}

}  // namespace lagflux
