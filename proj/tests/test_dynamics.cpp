#include "lagflux/dynamics.hpp"

#include <doctest.h>

using namespace lagflux;

namespace {

class TranslationModel final : public HamiltonianModel {
  public:
    size_t dim() const override { return 2; }
    double value(const State& z) const override { return z[0]; }
    void gradient(const State&, State& out) const override { out = {1.0, 0.0}; }
    double max_speed() const override { return 1.0; }
    std::string describe() const override { return "H = p"; }
};

// H = pi (p^2 + q^2): circular flow of period exactly 1.
class HarmonicModel final : public HamiltonianModel {
  public:
    size_t dim() const override { return 2; }
    double value(const State& z) const override {
        return std::numbers::pi * (z[0] * z[0] + z[1] * z[1]);
    }
    void gradient(const State& z, State& out) const override {
        out = {2 * std::numbers::pi * z[0], 2 * std::numbers::pi * z[1]};
    }
    double max_speed() const override { return 4 * std::numbers::pi; }
    std::string describe() const override { return "harmonic"; }
};

}  // namespace

TEST_CASE("linear flow moves q at unit speed") {
    TranslationModel H;
    auto traj = integrate(H, {0.0, 0.0}, 1.0, 1e-3);
    REQUIRE_FALSE(traj.energy_flagged);
    CHECK(traj.states.back()[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(traj.states.back()[0] == doctest::Approx(0.0));
    CHECK(traj.max_drift < 1e-12);
}

TEST_CASE("harmonic flow returns to the start after one period") {
    HarmonicModel H;
    auto traj = integrate(H, {1.0, 0.0}, 1.0, 1e-3);
    REQUIRE_FALSE(traj.energy_flagged);
    double dx = traj.states.back()[0] - 1.0, dy = traj.states.back()[1];
    CHECK(std::hypot(dx, dy) < 1e-4);
    CHECK(traj.max_drift < 1e-6 * std::numbers::pi);
}

TEST_CASE("unit shear crosses the unit box in unit time from every start") {
    TranslationModel H;  // G(x) = x: vertical speed 1
    BoxEdgeGeometry box;
    auto search = find_chords(H, box, 64, 2.0, 1e-3);
    CHECK(search.chords_found == 64);
    for (const auto& rep : search.reports) {
        REQUIRE(rep.hit);
        CHECK(rep.hit_time == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("surface model: delta and chord floor") {
    auto part = surface_model_partition(Rat(3), 3, Rat(1, 20));
    SurfaceModel H(part, 1.0 / 200);
    StripGeometry geo(part);

    auto dh = delta_H(H, geo, 512);
    CHECK(dh.delta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dh.declared_error < 1e-9);

    auto search = find_chords(H, geo, 256, 2.0, 1e-3);
    CHECK(search.chords_found > 0);
    CHECK(search.min_chord_time >= 3.0 / 4.0);
    // The fastest chords climb at the certified slope: 1/(A/k - 3eps - 4delta).
    double fastest = 1.0 / H.x1_shadow_slope();
    CHECK(search.min_chord_time >= fastest - 5e-3);
}

TEST_CASE("surface model: single-interval case keeps the full crossing time") {
    auto part = surface_model_partition(Rat(2), 1, Rat(1, 10));
    SurfaceModel H(part, 1.0 / 100);
    StripGeometry geo(part);
    auto search = find_chords(H, geo, 128, 3.0, 1e-3);
    CHECK(search.chords_found > 0);
    CHECK(search.min_chord_time > 2.0 - 4.0 / 10.0);
}

TEST_CASE("split model: no chords and displaced square") {
    auto part = surface_model_partition(Rat(3), 1, Rat(1, 10));
    SplitModel H(part, 1.0, 2.0, 1.0 / 200);
    SplitGeometry geo(1.0, part);

    auto dh = delta_H(H, geo, 512);
    CHECK(dh.delta == doctest::Approx(1.0).epsilon(1e-9));

    auto search = find_chords(H, geo, 128, 3.0, 2e-3);
    CHECK(search.chords_found == 0);

    double T = 1.0 + 10 * 2e-3;
    CHECK(split_square_displaced(H, geo, T, 2e-3, 64, 1e-3));
}

TEST_CASE("annulus pair: commuting certificate") {
    auto pair = build_annulus_FG(Rat(1, 2), 1);
    IntervalGeometry geo(pair.partition, 0.0);
    State lo{-0.49, -1.0}, hi{0.49, 1.0};
    auto est = estimate_pb_upper(*pair.F, *pair.G, geo, lo, hi, 100, 1e-4);
    CHECK(est.max_bracket < 1e-8);
    CHECK(est.commuting);
    CHECK(std::isinf(est.certificate));
}

TEST_CASE("box product pair: positive bracket and constraint enforcement") {
    // F is the vertical profile, G the horizontal one: the bracket is the
    // product of the two slopes, positive somewhere.
    class VertModel final : public HamiltonianModel {
      public:
        size_t dim() const override { return 2; }
        double value(const State& z) const override { return std::clamp(z[1], 0.0, 1.0); }
        void gradient(const State& z, State& out) const override {
            out = {0.0, (z[1] > 0 && z[1] < 1) ? 1.0 : 0.0};
        }
        double max_speed() const override { return 1.0; }
        std::string describe() const override { return "vertical step"; }
    };
    class HorizModel final : public HamiltonianModel {
      public:
        size_t dim() const override { return 2; }
        double value(const State& z) const override { return std::clamp(z[0], 0.0, 1.0); }
        void gradient(const State& z, State& out) const override {
            out = {(z[0] > 0 && z[0] < 1) ? 1.0 : 0.0, 0.0};
        }
        double max_speed() const override { return 1.0; }
        std::string describe() const override { return "horizontal step"; }
    };
    VertModel F;
    HorizModel G;
    BoxEdgeGeometry box;
    State lo{0.05, 0.05}, hi{0.95, 0.95};
    auto est = estimate_pb_upper(F, G, box, lo, hi, 50, 1e-5);
    CHECK(est.max_bracket > 0.5);
    CHECK_FALSE(est.commuting);

    // A pair violating F >= 1 on X1 is rejected.
    CHECK_THROWS_AS(estimate_pb_upper(G, F, box, lo, hi, 10, 1e-5), InvalidPair);
}

TEST_CASE("chekanov model: confinement and chord floor") {
    auto quad = chekanov_quadruple(Rat(1), 2, Int(1), Rat(9));
    ChekanovModel H(quad, 1.0 / 12, 1.0 / 200);
    ChekanovGeometry geo(quad);

    auto dh = delta_H(H, geo, 256);
    CHECK(dh.delta == doctest::Approx(1.0).epsilon(1e-12));

    auto conf = chekanov_confinement(H, H.disk_field().boundary_radius(),
                                     H.momentum_plateau(), 0.5, 1e-3, 64);
    CHECK(conf.within);
    CHECK(conf.max_abs_p < 0.5 * H.momentum_plateau());

    auto search = find_chords(H, geo, 128, 1.0, 1e-3);
    CHECK(search.chords_found > 0);
    CHECK(search.min_chord_time >= 0.5 - 2.0 / 12);
    CHECK(search.min_chord_time >= H.certified_min_chord_time() - 0.01);
}
