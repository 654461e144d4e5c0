#pragma once

// Piecewise-linear scalar profiles and their smoothings. Smoothing is
// convolution with a compactly supported C^1 kernel of half-width delta,
// evaluated in closed form segment by segment, so the smoothed profile
//   - never exceeds the PL generator's maximum slope,
//   - equals the generator exactly at distance >= delta from breakpoints,
//   - converges pointwise to the generator as delta -> 0.
// Builders that need "equals 0/1 on a neighborhood of ..." place their
// ramps inset by 2*delta inside the free arcs.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lagflux {

class Profile {
  public:
    Profile() = default;

    // Breakpoints strictly increasing; constant extension outside.
    Profile(std::vector<double> xs, std::vector<double> ys, double delta)
        : xs_(std::move(xs)), ys_(std::move(ys)), delta_(delta) {
        if (xs_.size() != ys_.size() || xs_.size() < 2)
            throw std::invalid_argument("profile needs matching breakpoint/value lists");
        for (size_t i = 1; i < xs_.size(); ++i)
            if (!(xs_[i] > xs_[i - 1]))
                throw std::invalid_argument("profile breakpoints must increase");
        if (delta_ < 0) throw std::invalid_argument("negative smoothing width");
    }

    double delta() const { return delta_; }
    const std::vector<double>& breakpoints() const { return xs_; }
    const std::vector<double>& values() const { return ys_; }

    double pl(double x) const {
        if (x <= xs_.front()) return ys_.front();
        if (x >= xs_.back()) return ys_.back();
        size_t k = seg(x);
        double t = (x - xs_[k]) / (xs_[k + 1] - xs_[k]);
        return ys_[k] + t * (ys_[k + 1] - ys_[k]);
    }

    double pl_slope(double x) const {
        if (x < xs_.front() || x > xs_.back()) return 0.0;
        size_t k = seg(x);
        return slope(k);
    }

    double max_abs_slope() const {
        double m = 0;
        for (size_t k = 0; k + 1 < xs_.size(); ++k) m = std::max(m, std::abs(slope(k)));
        return m;
    }

    double operator()(double x) const {
        if (delta_ == 0) return pl(x);
        return convolve(x, false);
    }

    double deriv(double x) const {
        if (delta_ == 0) return pl_slope(x);
        return convolve(x, true);
    }

  private:
    std::vector<double> xs_, ys_;
    double delta_ = 0;

    size_t seg(double x) const {
        size_t k = std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin();
        if (k == 0) return 0;
        if (k >= xs_.size()) return xs_.size() - 2;
        return k - 1;
    }

    double slope(size_t k) const { return (ys_[k + 1] - ys_[k]) / (xs_[k + 1] - xs_[k]); }

    // Kernel (15/16)(1-u^2)^2 on [-1,1]; antiderivatives of phi and u*phi.
    static double K0(double u) { return 15.0 / 16.0 * (u - 2.0 * u * u * u / 3.0 + std::pow(u, 5) / 5.0); }
    static double K1(double u) {
        double u2 = u * u;
        return 15.0 / 16.0 * (u2 / 2.0 - u2 * u2 / 2.0 + u2 * u2 * u2 / 6.0);
    }

    double convolve(double x, bool derivative) const {
        // g(x - delta*u) is linear in u between kernel-window breakpoints.
        std::vector<double> cuts{-1.0, 1.0};
        for (double b : xs_) {
            double u = (x - b) / delta_;
            if (u > -1.0 && u < 1.0) cuts.push_back(u);
        }
        if (cuts.size() == 2) {
            // Whole window inside one segment: the convolution is exact
            // (unit mass, vanishing odd moment), so return the segment line.
            return derivative ? pl_slope(x) : pl(x);
        }
        std::sort(cuts.begin(), cuts.end());
        double acc = 0;
        double mass = K0(1.0) - K0(-1.0);
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            double u1 = cuts[i], u2 = cuts[i + 1];
            if (u2 - u1 < 1e-15) continue;
            double um = 0.5 * (u1 + u2);
            double ym = x - delta_ * um;
            double b_slope, a_at_x;
            if (ym <= xs_.front()) {
                b_slope = 0;
                a_at_x = ys_.front();
            } else if (ym >= xs_.back()) {
                b_slope = 0;
                a_at_x = ys_.back();
            } else {
                size_t k = seg(ym);
                b_slope = slope(k);
                a_at_x = ys_[k] + b_slope * (x - xs_[k]);  // value of the segment's line at x
            }
            double dK0 = K0(u2) - K0(u1);
            if (derivative) {
                acc += b_slope * dK0;
            } else {
                acc += a_at_x * dK0 - b_slope * delta_ * (K1(u2) - K1(u1));
            }
        }
        return acc / mass;
    }
};

// C^1 smoothstep on [0,1], used for shape factors that must start and end flat.
inline double smoothstep(double s) {
    if (s <= 0) return 0;
    if (s >= 1) return 1;
    return s * s * (3 - 2 * s);
}
inline double smoothstep_deriv(double s) {
    if (s <= 0 || s >= 1) return 0;
    return 6 * s * (1 - s);
}

}  // namespace lagflux
