#include "lagflux/hamiltonians.hpp"

#include <doctest.h>
#include <random>

using namespace lagflux;

namespace {

// Simple coordinate models for bracket checks: value = c . z restricted, or
// the harmonic pi(p^2+q^2).
class LinearModel final : public HamiltonianModel {
  public:
    LinearModel(size_t dim, size_t coord) : dim_(dim), coord_(coord) {}
    size_t dim() const override { return dim_; }
    double value(const State& z) const override { return z[coord_]; }
    void gradient(const State& z, State& out) const override {
        out.assign(z.size(), 0.0);
        out[coord_] = 1.0;
    }
    double max_speed() const override { return 1.0; }
    std::string describe() const override { return "coordinate"; }

  private:
    size_t dim_, coord_;
};

}  // namespace

TEST_CASE("poisson bracket convention: {p1, q1} = -1") {
    LinearModel P(2, 0), Q(2, 1);
    State z{0.3, -0.8};
    CHECK(poisson_bracket(P, Q, z, 1e-5) == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(poisson_bracket(Q, P, z, 1e-5) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(poisson_bracket(P, P, z, 1e-5) == doctest::Approx(0.0));
}

TEST_CASE("poisson bracket antisymmetry is O(h^2) on smooth pairs") {
    auto part = surface_model_partition(Rat(3), 3, Rat(1, 20));
    SurfaceModel G(part, 1.0 / 200);
    SurfaceModel F(part, 1.0 / 300);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ux(0.0, 3.0), uy(0.0, 1.0);
    for (int iter = 0; iter < 200; ++iter) {
        State z{ux(rng), uy(rng)};
        double h = 1e-4;
        double s = poisson_bracket(F, G, z, h) + poisson_bracket(G, F, z, h);
        CHECK(std::abs(s) < 10 * h * h + 1e-12);
    }
}

TEST_CASE("surface model boundary values and slope certificate") {
    auto model = build_surface_G(Rat(3), 3, Rat(1, 20), Rat(1, 200));
    // Y0 band: left edge and its delta-neighborhood.
    CHECK(model->value({0.0, 0.5}) == 0.0);
    CHECK(model->value({0.0, 0.0}) == 0.0);
    // Y1 band: right edge.
    CHECK(model->value({3.0, 0.5}) == 1.0);
    CHECK(model->value({3.0, 1.0}) == 1.0);
    // Y arcs on the top edge: gamma_2 is Y0 (value 0), gamma_4 is Y1 (value 1).
    auto part = surface_model_partition(Rat(3), 3, Rat(1, 20));
    for (const auto& iv : part.top) {
        double mid = 0.5 * (to_double(iv.lo) + to_double(iv.hi));
        double v = model->value({mid, 1.0});
        if (iv.label == RegionName::Y0) CHECK(v == 0.0);
        if (iv.label == RegionName::Y1) CHECK(v == 1.0);
    }
    CHECK(model->x1_shadow_slope() < model->slope_cap());

    // A=2, k=1, eps=1/10: slope below 1/(2 - 2/5) = 5/8.
    auto m2 = build_surface_G(Rat(2), 1, Rat(1, 10), Rat(1, 100));
    CHECK(m2->x1_shadow_slope() < 5.0 / 8.0);

    CHECK_THROWS_AS(build_surface_G(Rat(1), 1, Rat(1, 3), Rat(1, 100)), InvalidModel);
}

TEST_CASE("surface model gradient matches finite differences") {
    auto model = build_surface_G(Rat(3), 3, Rat(1, 20), Rat(1, 200));
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> ux(-0.04, 3.04), uy(-0.04, 1.04);
    for (int iter = 0; iter < 300; ++iter) {
        State z{ux(rng), uy(rng)};
        State g;
        model->gradient(z, g);
        double h = 1e-6;
        for (size_t c = 0; c < 2; ++c) {
            State zp = z, zm = z;
            zp[c] += h;
            zm[c] -= h;
            double fd = (model->value(zp) - model->value(zm)) / (2 * h);
            CHECK(g[c] == doctest::Approx(fd).epsilon(1e-4).scale(1.0));
        }
    }
}

TEST_CASE("smoothed profiles converge to their generators as delta shrinks") {
    // One fixed PL generator, three smoothing widths: the sup-norm error
    // against the generator decreases monotonically and the smoothed value
    // is exact away from the breakpoints.
    std::vector<double> xs{0.0, 0.3, 0.4, 0.9, 1.0};
    std::vector<double> ys{0.0, 1.0, 1.0, 0.2, 0.2};
    double delta = 1.0 / 50;
    Profile p1(xs, ys, delta), p2(xs, ys, delta / 2), p4(xs, ys, delta / 4);
    double e1 = 0, e2 = 0, e4 = 0;
    for (int j = 0; j <= 2000; ++j) {
        double x = -0.1 + 1.2 * j / 2000.0;
        double ref = p1.pl(x);
        e1 = std::max(e1, std::abs(p1(x) - ref));
        e2 = std::max(e2, std::abs(p2(x) - ref));
        e4 = std::max(e4, std::abs(p4(x) - ref));
    }
    CHECK(e1 > e2);
    CHECK(e2 > e4);
    CHECK(e4 > 0);
    CHECK(p1(0.2) == p1.pl(0.2));  // exact on ramp interiors
    CHECK(p1(0.95) == 0.2);        // exact on flats
    CHECK(p1.max_abs_slope() >= std::abs(p1.deriv(0.35)));
}

TEST_CASE("split model constants and completeness") {
    auto model = build_split_H(Rat(1), Rat(3), 1, Rat(1, 10), Rat(2), Rat(1, 200));
    CHECK(model->declared_y1 == 2.0);
    CHECK(model->declared_y0 == doctest::Approx(1.0));
    // H = p1 + G(pn): value on a Y1 representative.
    CHECK(model->value({0.0, 0.0, 3.0, 0.5}) == doctest::Approx(2.0));
    CHECK(model->value({1.0, 7.0, 0.0, 0.5}) == doctest::Approx(1.0));
    // Unit translation speed in q1.
    State g;
    model->gradient({0.2, 0.3, 1.5, 0.7}, g);
    CHECK(g[0] == 1.0);

    // k=2 admits C = 21/20 at eps = 1/10.
    auto tight = build_split_H(Rat(1), Rat(3), 2, Rat(1, 10), Rat(21, 20), Rat(1, 200));
    CHECK(tight->declared_y1 == doctest::Approx(1.05));

    // x1 = xn = 1: no admissible constant.
    CHECK_THROWS_AS(build_split_H(Rat(1), Rat(1), 1, Rat(1, 10), Rat(1), Rat(1, 200)),
                    InvalidModel);
}

TEST_CASE("annulus pair commutes and meets its boundary conditions") {
    auto pair = build_annulus_FG(Rat(1, 2), 1);
    // F is 0 on X0 arcs, 1 on X1 arcs; G is 0 on Y0 arcs, 1 on Y1 arcs.
    for (const auto& iv : pair.partition) {
        double mid = 0.5 * (to_double(iv.lo) + to_double(iv.hi));
        State z{mid, 0.0};
        switch (iv.label) {
            case RegionName::X0: CHECK(pair.F->value(z) == 0.0); break;
            case RegionName::X1: CHECK(pair.F->value(z) == 1.0); break;
            case RegionName::Y0: CHECK(pair.G->value(z) == 0.0); break;
            case RegionName::Y1: CHECK(pair.G->value(z) == 1.0); break;
        }
    }
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> ux(-0.49, 0.49), uy(-1.0, 1.0);
    for (int iter = 0; iter < 500; ++iter) {
        State z{ux(rng), uy(rng)};
        CHECK(std::abs(poisson_bracket(*pair.F, *pair.G, z, 1e-4)) < 1e-10);
    }

    auto pair2 = build_annulus_FG(Rat(1, 2), 2);
    CHECK(pair2.partition.size() == 9);
}

TEST_CASE("chekanov model values on the quadruple and certificates") {
    auto quad = chekanov_quadruple(Rat(1), 2, Int(1), Rat(9));
    ChekanovModel model(quad, 1.0 / 12, 1.0 / 200);
    ChekanovGeometry geo(quad);

    // H = 0 on Y0, H = 1 on Y1 (exactly, by the flat clamps).
    for (uint64_t i = 0; i < 128; ++i) {
        CHECK(model.value(geo.sample(RegionName::Y0, i, 128)) == 0.0);
        CHECK(model.value(geo.sample(RegionName::Y1, i, 128)) == 1.0);
    }
    CHECK(model.momentum_plateau() == doctest::Approx(4.0));
    CHECK(model.sampled_gradient_max() < model.gradient_cap());
    CHECK(model.certified_min_chord_time() >= 0.5 - 2.0 / 12);

    // theta-independence of H on |p| <= C at co-rotating points.
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> uth(0.0, 1.0), ur(0.1, 0.5), uxi(0.0, 1.0);
    for (int iter = 0; iter < 200; ++iter) {
        double r = ur(rng), xi = uxi(rng), th = uth(rng);
        double phi0 = 2 * std::numbers::pi * xi;
        double phi = phi0 + 2 * std::numbers::pi * 1.0 * th;
        State z{r * std::cos(phi), r * std::sin(phi), 0.0, th};
        State z0{r * std::cos(phi0), r * std::sin(phi0), 0.0, 0.0};
        CHECK(model.value(z) == doctest::Approx(model.value(z0)).epsilon(1e-9));
    }

    CHECK_THROWS_AS(build_chekanov_H(Rat(1), 1, Int(1), Rat(3), Rat(1, 12), Rat(1, 100)),
                    InvalidModel);
}

TEST_CASE("chekanov model gradient matches finite differences") {
    auto quad = chekanov_quadruple(Rat(1), 2, Int(1), Rat(9));
    ChekanovModel model(quad, 1.0 / 12, 1.0 / 200);
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> uc(-0.55, 0.55), up(-5.0, 5.0), uth(0.0, 1.0);
    int checked = 0;
    for (int iter = 0; iter < 400; ++iter) {
        State z{uc(rng), uc(rng), up(rng), uth(rng)};
        if (z[0] * z[0] + z[1] * z[1] < 0.02) continue;
        State g;
        model.gradient(z, g);
        double h = 1e-6;
        bool smooth_here = true;
        for (size_t c = 0; c < 4 && smooth_here; ++c) {
            State zp = z, zm = z;
            zp[c] += h;
            zm[c] -= h;
            double fd = (model.value(zp) - model.value(zm)) / (2 * h);
            if (std::abs(fd - g[c]) > 2e-3 * (1 + std::abs(fd))) smooth_here = false;
            else ++checked;
        }
    }
    // The field is C1 away from the clamp curves; the overwhelming majority
    // of random points must agree with finite differences.
    CHECK(checked > 1200);
}
