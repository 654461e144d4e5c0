#pragma once

// The sector Hamiltonian G behind the Chekanov chord bound. Working in
// action-angle chart coordinates (zeta, Y) on one fundamental sector of the
// disk (zeta = 4m*xi - 3/2 spans the four arc widths, Y = area/a), the level
// sets of G are a nested family of power-6 superellipse arcs anchored at the
// middle Y1 arc: ports on the boundary circle spread linearly across the X
// arcs, the curves widen with depth to reclaim the angular margins, close
// inside the disk at an interpolated depth, and close outside the disk where
// nothing constrains them. G reparameterizes the family by enclosed in-disk
// chart area, which makes the in-disk transit time of every chord equal to
// (a/4m) * (swept area) independently of the level: the certified minimum
// chord time below. The whole pattern repeats with period 1/m in the angle,
// and G vanishes near the sector rays, so the periodic extension is smooth.

#include "lagflux/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace lagflux {

namespace chk {

// Monotone cubic interpolation (Fritsch-Carlson slopes).
class MonotoneCubic {
  public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
        : xs_(std::move(xs)), ys_(std::move(ys)) {
        size_t n = xs_.size();
        slopes_.assign(n, 0.0);
        std::vector<double> d(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) d[i] = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
        slopes_[0] = d[0];
        slopes_[n - 1] = d[n - 2];
        for (size_t i = 1; i + 1 < n; ++i) {
            if (d[i - 1] * d[i] <= 0) slopes_[i] = 0;
            else {
                double w1 = 2 * (xs_[i + 1] - xs_[i]) + (xs_[i] - xs_[i - 1]);
                double w2 = (xs_[i + 1] - xs_[i]) + 2 * (xs_[i] - xs_[i - 1]);
                slopes_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
    }

    double value(double x) const {
        Cell c = locate(x);
        double t = c.t, h = c.h;
        size_t i = c.i;
        double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
        double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
        return h00 * ys_[i] + h * h10 * slopes_[i] + h01 * ys_[i + 1] + h * h11 * slopes_[i + 1];
    }

    double deriv(double x) const {
        Cell c = locate(x);
        double t = c.t, h = c.h;
        size_t i = c.i;
        double d00 = 6 * t * (t - 1), d10 = (1 - t) * (1 - 3 * t);
        double d01 = -d00, d11 = t * (3 * t - 2);
        return (d00 * ys_[i] + d01 * ys_[i + 1]) / h + d10 * slopes_[i] + d11 * slopes_[i + 1];
    }

  private:
    std::vector<double> xs_, ys_, slopes_;

    struct Cell {
        size_t i;
        double t, h;
    };

    Cell locate(double x) const {
        size_t lo = 0, hi = xs_.size() - 1;
        if (x <= xs_.front()) hi = 1;
        else if (x >= xs_.back()) lo = hi - 1;
        else {
            while (hi - lo > 1) {
                size_t mid = (lo + hi) / 2;
                (xs_[mid] <= x ? lo : hi) = mid;
            }
        }
        double h = xs_[lo + 1] - xs_[lo];
        return {lo, (x - xs_[lo]) / h, h};
    }
};

}  // namespace chk

class ChekanovDiskField {
  public:
    ChekanovDiskField(double a, unsigned m, double k_ambient)
        : a_(a), m_(m), k_(k_ambient) {
        if (a_ <= 0 || m_ == 0 || k_ <= a_) throw InvalidModel("need k > a > 0 and m >= 1");
        radius_ = std::sqrt(a_ / std::numbers::pi);
        R1_ = 0.5 + flat_;
        R0_ = 1.5 - flat_;
        wmax_ = (2.0 - margin_) / R0_;
        dout_ = std::min(1.0, 0.9 * (k_ / a_ - 1.0));
        build_reparam();
    }

    double boundary_radius() const { return radius_; }
    double certified_min_chord_time() const { return certified_time_; }
    double level_low() const { return R1_; }
    double level_high() const { return R0_; }

    // Scalar value at a plane point.
    double value(double x, double y) const {
        double g, gx, gy;
        eval(x, y, g, gx, gy);
        return g;
    }

    // Value and Euclidean gradient.
    void eval(double x, double y, double& g, double& gx, double& gy) const {
        double r2 = x * x + y * y;
        if (r2 < 1e-300) {  // deep under the dead band: constant zero
            g = gx = gy = 0;
            return;
        }
        double zeta, u, lam, lz, lu;
        chart(x, y, zeta, u);
        level_chart(zeta, u, lam, lz, lu);
        if (lam <= R1_ || lam >= R0_) {
            g = (lam <= R1_) ? 1.0 : 0.0;
            gx = gy = 0;
            return;
        }
        double fp = reparam_.deriv(lam);
        g = F(lam);
        // dG/dI and dG/dxi back to Cartesian.
        double GI = fp * lu * (-1.0 / a_);
        double Gxi = fp * lz * (4.0 * (double)m_);
        gx = GI * (2 * std::numbers::pi * x) - Gxi * y / (2 * std::numbers::pi * r2);
        gy = GI * (2 * std::numbers::pi * y) + Gxi * x / (2 * std::numbers::pi * r2);
    }

    // Max Euclidean |grad| over a sampling of the sector inside the disk;
    // the construction keeps it well below the 4m/sqrt(a) certificate.
    double sampled_max_gradient(int nr = 160, int nxi = 320) const {
        double worst = 0;
        for (int i = 1; i <= nr; ++i) {
            double r = radius_ * (double)i / (double)nr;
            for (int j = 0; j < nxi; ++j) {
                double xi = (j + 0.5) / (double)nxi;
                double x = r * std::cos(2 * std::numbers::pi * xi);
                double y = r * std::sin(2 * std::numbers::pi * xi);
                double g, gx, gy;
                eval(x, y, g, gx, gy);
                worst = std::max(worst, std::hypot(gx, gy));
            }
        }
        return worst;
    }

  private:
    double a_, k_, radius_;
    unsigned m_;
    double flat_ = 1.0 / 24;   // port flats at the X arc ends
    double margin_ = 1.0 / 10;  // angular margin against the sector rays
    double R1_, R0_;
    double d_plateau_ = 0.08, d_max_ = 0.92, bulge_depth_ = 0.5;
    double wmax_, dout_;
    double certified_time_ = 0;
    chk::MonotoneCubic reparam_;  // level -> value in [0,1]

    double depth(double lam) const {
        return d_plateau_ + (d_max_ - d_plateau_) * (lam - R1_) / (R0_ - R1_);
    }
    double depth_deriv() const { return (d_max_ - d_plateau_) / (R0_ - R1_); }

    double width(double u) const {
        if (u <= 0) return 1.0;
        return 1.0 + (wmax_ - 1.0) * smooth(u / bulge_depth_);
    }
    double width_deriv(double u) const {
        if (u <= 0 || u >= bulge_depth_) return 0.0;
        double s = u / bulge_depth_;
        return (wmax_ - 1.0) * 6 * s * (1 - s) / bulge_depth_;
    }
    static double smooth(double s) {
        if (s <= 0) return 0;
        if (s >= 1) return 1;
        return s * s * (3 - 2 * s);
    }

    // (x, y) -> sector chart (zeta, u); the pattern repeats with period 1/m.
    void chart(double x, double y, double& zeta, double& u) const {
        double I = std::numbers::pi * (x * x + y * y);
        u = 1.0 - I / a_;
        double xi = std::atan2(y, x) / (2 * std::numbers::pi);
        double per = 1.0 / (double)m_;
        double s = xi + 1.0 / (8.0 * (double)m_);
        s -= per * std::floor(s / per);
        zeta = 4.0 * (double)m_ * (s - 1.0 / (8.0 * (double)m_)) - 1.5;
    }

    static double pow6(double v) { return v * v * v * v * v * v; }

    // Level parameter lambda and its chart partials at (zeta, u).
    void level_chart(double zeta, double u, double& lam, double& lz, double& lu) const {
        double az = std::abs(zeta);
        if (u <= 0) {
            double ku = R0_ / dout_;
            double t = pow6(az) + pow6(ku * (-u));
            lam = std::pow(t, 1.0 / 6.0);
            if (lam < 1e-12) {
                lz = lu = 0;
                return;
            }
            double lam5 = pow6(lam) / lam;
            lz = (pow6(az) / (az > 1e-300 ? az : 1.0)) * ((zeta < 0) ? -1.0 : 1.0) / lam5;
            lu = -pow6(ku) * pow6(-u) / ((-u) > 1e-300 ? (-u) : 1.0) / lam5;
            return;
        }
        double w = width(u);
        // Solve (|zeta|/(w lam))^6 + (u/depth(lam))^6 = 1 for lam; the left
        // side is strictly decreasing in lam, so Newton with a bisection
        // bracket converges unconditionally.
        double lo = 1e-9, hi = R0_ * 2.0;
        auto phi = [&](double L) { return pow6(az / (w * L)) + pow6(u / depth(L)) - 1.0; };
        if (phi(hi) > 0) {  // deeper than any level: below the support
            lam = R0_ * 2.0;
            lz = lu = 0;
            return;
        }
        double L = std::max({az / w, depth_inverse(u), 1e-6});
        for (int it = 0; it < 60; ++it) {
            double f = phi(L);
            double D = depth(L);
            double df = -6 * pow6(az / (w * L)) / L - 6 * pow6(u / D) * depth_deriv() / D;
            if (f > 0) lo = std::max(lo, L);
            else hi = std::min(hi, L);
            double Lnew = (df != 0) ? L - f / df : 0.5 * (lo + hi);
            if (!(Lnew > lo && Lnew < hi)) Lnew = 0.5 * (lo + hi);
            if (std::abs(Lnew - L) < 1e-14 * (1 + L)) {
                L = Lnew;
                break;
            }
            L = Lnew;
        }
        lam = L;
        double D = depth(L);
        double phi_l = -6 * pow6(az / (w * L)) / L - 6 * pow6(u / D) * depth_deriv() / D;
        double phi_z = (az > 1e-300) ? 6 * pow6(az / (w * L)) / az * ((zeta < 0) ? -1.0 : 1.0)
                                     : 0.0;
        double phi_u = -6 * pow6(az / (w * L)) * width_deriv(u) / w +
                       ((u > 1e-300) ? 6 * pow6(u / D) / u : 0.0);
        lz = -phi_z / phi_l;
        lu = -phi_u / phi_l;
    }

    // Level whose in-disk tip sits at depth u (zeta = 0 solution).
    double depth_inverse(double u) const {
        if (u <= d_plateau_) return R1_;
        if (u >= d_max_) return R0_;
        return R1_ + (u - d_plateau_) * (R0_ - R1_) / (d_max_ - d_plateau_);
    }

    double F(double lam) const {
        if (lam <= R1_) return 1.0;
        if (lam >= R0_) return 0.0;
        return reparam_.value(lam);
    }

    // In-disk chart area enclosed by level lam (between the curve and the
    // boundary circle): 2 * lam * depth * Int_0^1 w(depth*t) (1-t^6)^(1/6) dt.
    double in_disk_area(double lam) const {
        static const int N = 64;
        double D = depth(lam);
        double acc = 0;
        for (int i = 0; i < N; ++i) {
            double t = (i + 0.5) / N;
            acc += width(D * t) * std::pow(1.0 - pow6(t), 1.0 / 6.0);
        }
        return 2.0 * lam * D * acc / N;
    }

    void build_reparam() {
        const int N = 256;
        std::vector<double> lams(N + 1), vals(N + 1);
        double A1 = in_disk_area(R1_);
        double A0 = in_disk_area(R0_);
        double S = A0 - A1;
        for (int j = 0; j <= N; ++j) {
            double lam = R1_ + (R0_ - R1_) * j / N;
            lams[j] = lam;
            vals[j] = 1.0 - (in_disk_area(lam) - A1) / S;
        }
        reparam_ = chk::MonotoneCubic(lams, vals);
        certified_time_ = S * a_ / (4.0 * (double)m_);
    }
};

}  // namespace lagflux
