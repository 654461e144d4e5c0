#include "lagflux/quadruple.hpp"

#include <doctest.h>
#include <random>

using namespace lagflux;

TEST_CASE("torus quadruple labels and arc layout") {
    auto q = torus_quadruple(2, {Int(1), Int(0)});
    REQUIRE(q.partition.arcs() == 4);
    CHECK(q.partition.breakpoints[0] == Rat(0));
    CHECK(q.partition.breakpoints[1] == Rat(1, 4));
    CHECK(q.partition.labels[0] == RegionName::X0);
    CHECK(q.partition.labels[1] == RegionName::Y1);
    CHECK(q.partition.labels[2] == RegionName::X1);
    CHECK(q.partition.labels[3] == RegionName::Y0);

    auto q2 = torus_quadruple(2, {Int(2), Int(0)});
    REQUIRE(q2.partition.arcs() == 8);
    CHECK(q2.partition.labels[4] == RegionName::X0);
    CHECK(q2.partition.labels[5] == RegionName::Y1);

    CHECK_THROWS_AS(torus_quadruple(2, {Int(0), Int(0)}), DegenerateClass);
}

TEST_CASE("negating the class swaps the Y labels and keeps the X pair") {
    auto plus = torus_quadruple(1, {Int(1)});
    auto minus = torus_quadruple(1, {Int(-1)});
    REQUIRE(plus.partition.arcs() == minus.partition.arcs());
    for (size_t i = 0; i < plus.partition.arcs(); ++i) {
        RegionName a = plus.partition.labels[i], b = minus.partition.labels[i];
        if (a == RegionName::X0 || a == RegionName::X1) CHECK(a == b);
        if (a == RegionName::Y0) CHECK(b == RegionName::Y1);
        if (a == RegionName::Y1) CHECK(b == RegionName::Y0);
    }

    // As regions on the torus: membership agrees after the swap.
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(0, 99);
    auto qp = torus_quadruple(2, {Int(2), Int(3)});
    auto qm = torus_quadruple(2, {Int(-2), Int(-3)});
    for (int iter = 0; iter < 300; ++iter) {
        RatVec pt{Rat(num(rng), 100), Rat(num(rng), 100)};
        RegionName a = qp.region_of(pt), b = qm.region_of(pt);
        if (a == RegionName::Y0) CHECK(b == RegionName::Y1);
        else if (a == RegionName::Y1) CHECK(b == RegionName::Y0);
        else CHECK(a == b);
    }
}

TEST_CASE("torus quadruple covers the circle and same-family arcs never touch") {
    for (int k = 1; k <= 4; ++k) {
        auto q = torus_quadruple(3, {Int(k), Int(0), Int(0)});
        Rat total = 0;
        size_t n = q.partition.arcs();
        for (size_t i = 0; i < n; ++i) {
            Rat lo = q.partition.breakpoints[i];
            Rat hi = (i + 1 < n) ? q.partition.breakpoints[i + 1] : Rat(1);
            total += hi - lo;
        }
        CHECK(total == Rat(1));
        auto fam = [](RegionName r) {
            return (r == RegionName::X0 || r == RegionName::X1) ? 0 : 1;
        };
        for (size_t i = 0; i < n; ++i) {
            RegionName a = q.partition.labels[i], b = q.partition.labels[(i + 1) % n];
            CHECK((a == b || fam(a) != fam(b)));
        }
    }
}

TEST_CASE("surface partition lengths and labels") {
    auto p = surface_model_partition(Rat(3), 3, Rat(1, 20));
    auto lens = p.top_lengths_right_to_left();
    std::vector<Rat> expect{Rat(1),     Rat(1, 20), Rat(1, 20), Rat(1, 20), Rat(17, 20),
                            Rat(1, 20), Rat(1, 20), Rat(1, 20), Rat(17, 20)};
    REQUIRE(lens.size() == expect.size());
    for (size_t i = 0; i < lens.size(); ++i) CHECK(lens[i] == expect[i]);
    Rat total = 0;
    for (const auto& l : lens) total += l;
    CHECK(total == Rat(3));
    CHECK(strip_quadruple_admissible(p));

    auto single = surface_model_partition(Rat(2), 1, Rat(1, 10));
    REQUIRE(single.top.size() == 1);
    CHECK(single.top[0].label == RegionName::X1);
    CHECK(single.top[0].lo == Rat(0));
    CHECK(single.top[0].hi == Rat(2));

    CHECK_THROWS_AS(surface_model_partition(Rat(1), 2, Rat(1, 4)), InvalidPartition);
}

TEST_CASE("surface partition sums to A for random parameters") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> An(1, 8), kn(1, 5), en(1, 60);
    for (int iter = 0; iter < 300; ++iter) {
        Rat A(An(rng));
        unsigned k = (unsigned)kn(rng);
        Rat eps = Rat(1, 40 + en(rng));
        if (A / Rat(k) - 3 * eps <= 0) continue;
        auto p = surface_model_partition(A, k, eps);
        Rat total = 0;
        for (const auto& iv : p.top) total += iv.hi - iv.lo;
        CHECK(total == A);
        CHECK(p.top.size() == 4 * (size_t)k - 3);
        CHECK(strip_quadruple_admissible(p));
    }
}

TEST_CASE("chekanov quadruple arcs and guards") {
    auto q = chekanov_quadruple(Rat(1), 1, Int(0), Rat(5));
    REQUIRE(q.arcs.size() == 4);
    CHECK(q.arcs[0].label == RegionName::X0);
    CHECK(q.arcs[1].label == RegionName::Y1);
    CHECK(q.arcs[2].label == RegionName::X1);
    CHECK(q.arcs[3].label == RegionName::Y0);
    CHECK(arcs_admissible(q.arcs));

    auto q8 = chekanov_quadruple(Rat(1), 2, Int(1), Rat(9));
    CHECK(q8.arcs.size() == 8);
    CHECK(arcs_admissible(q8.arcs));

    CHECK_THROWS_AS(chekanov_quadruple(Rat(1), 1, Int(1), Rat(3)), InvalidModel);
}

TEST_CASE("strip geometry sampling and membership") {
    auto p = surface_model_partition(Rat(3), 3, Rat(1, 20));
    StripGeometry geo(p);
    for (uint64_t i = 0; i < 64; ++i) {
        auto z = geo.sample(RegionName::X0, i, 64);
        CHECK(geo.contains(RegionName::X0, z, 1e-12));
        CHECK_FALSE(geo.contains(RegionName::X1, z, 1e-3));
    }
    CHECK(geo.contains(RegionName::Y1, {3.0, 0.5}, 1e-12));
    CHECK(geo.contains(RegionName::X1, {2.5, 1.0}, 1e-12));
    CHECK_FALSE(geo.contains(RegionName::X1, {2.5, 0.9}, 1e-3));
}

TEST_CASE("chekanov geometry rotates with theta") {
    auto q = chekanov_quadruple(Rat(1), 2, Int(1), Rat(9));
    ChekanovGeometry geo(q);
    for (uint64_t i = 0; i < 64; ++i) {
        auto z = geo.sample(RegionName::X0, i, 64);
        CHECK(geo.contains(RegionName::X0, z, 1e-9));
        CHECK_FALSE(geo.contains(RegionName::X1, z, 1e-4));
        CHECK(z[2] == 0.0);
    }
}
