#pragma once

// Exact ray geometry against convex rational polytopes in halfspace form:
// containment, the ray exit parameter, and the associated gauge
// (Minkowski functional). Polytopes are closed; for rays from an interior
// point the exit parameter equals the supremum over the open set, so the
// open domains upstream lose nothing by passing their closures. Unbounded
// polytopes are permitted and +inf is a first-class result.

#include "lagflux/errors.hpp"
#include "lagflux/lattice.hpp"
#include "lagflux/rational.hpp"

#include <vector>

namespace lagflux {

// One closed halfspace {y : <normal, y> <= offset} with integer normal.
struct Halfspace {
    IntVec normal;
    Rat offset;
};

struct RationalPolytope {
    size_t dimension = 0;
    std::vector<Halfspace> halfspaces;

    static RationalPolytope from_halfspaces(size_t dim, std::vector<Halfspace> hs) {
        RationalPolytope p;
        p.dimension = dim;
        for (const auto& h : hs)
            if (h.normal.size() != dim)
                throw DimensionError("halfspace normal has wrong dimension");
        p.halfspaces = std::move(hs);
        return p;
    }

    // The nonnegative quadrant {y_i >= 0}, the moment polytope of C^n.
    static RationalPolytope quadrant(size_t dim) {
        std::vector<Halfspace> hs;
        for (size_t i = 0; i < dim; ++i) {
            IntVec n(dim, 0);
            n[i] = -1;
            hs.push_back({n, Rat(0)});
        }
        return from_halfspaces(dim, std::move(hs));
    }

    // The standard simplex {y_i >= 0, sum y_i <= 1}, the moment polytope of CP^n.
    static RationalPolytope simplex(size_t dim) {
        RationalPolytope p = quadrant(dim);
        p.halfspaces.push_back({IntVec(dim, 1), Rat(1)});
        return p;
    }

    // The box prod [lo_i, hi_i]; [0,1]^2 is the moment polytope of S^2 x S^2.
    static RationalPolytope box(const RatVec& lo, const RatVec& hi) {
        if (lo.size() != hi.size()) throw DimensionError("box bounds dimension mismatch");
        size_t dim = lo.size();
        std::vector<Halfspace> hs;
        for (size_t i = 0; i < dim; ++i) {
            IntVec n(dim, 0);
            n[i] = 1;
            hs.push_back({n, hi[i]});
            n[i] = -1;
            hs.push_back({n, -lo[i]});
        }
        return from_halfspaces(dim, std::move(hs));
    }

    bool contains(const RatVec& x) const {
        check_dim(x);
        for (const auto& h : halfspaces)
            if (dot(h.normal, x) > h.offset) return false;
        return true;
    }

    bool strictly_contains(const RatVec& x) const {
        check_dim(x);
        for (const auto& h : halfspaces)
            if (dot(h.normal, x) >= h.offset) return false;
        return true;
    }

    static Rat dot(const IntVec& n, const RatVec& x) {
        Rat acc = 0;
        for (size_t i = 0; i < n.size(); ++i) acc += Rat(n[i]) * x[i];
        return acc;
    }

  private:
    void check_dim(const RatVec& x) const {
        if (x.size() != dimension) throw DimensionError("point has wrong dimension");
    }
};

// The ray x - t*alpha, t > 0.
struct RayQuery {
    RatVec base;
    RatVec direction;
};

// sup { t >= 0 : x - t*alpha in P }: the minimum over halfspaces that the
// reversed direction crosses of (offset - <n,x>) / <n,-alpha>; +inf when no
// halfspace binds.
inline ExtRat ray_exit(const RationalPolytope& P, const RayQuery& q) {
    if (q.base.size() != P.dimension || q.direction.size() != P.dimension)
        throw DimensionError("ray query dimension mismatch");
    bool zero = true;
    for (const auto& d : q.direction)
        if (d != 0) zero = false;
    if (zero) throw DegenerateClass("ray direction is the zero class");
    if (!P.contains(q.base)) throw OutsideDomain("ray base point lies outside the polytope");

    bool bound = false;
    Rat best = 0;
    for (const auto& h : P.halfspaces) {
        Rat along = 0;  // <normal, -alpha>
        for (size_t i = 0; i < h.normal.size(); ++i) along -= Rat(h.normal[i]) * q.direction[i];
        if (along <= 0) continue;
        Rat t = (h.offset - RationalPolytope::dot(h.normal, q.base)) / along;
        if (!bound || t < best) {
            best = t;
            bound = true;
        }
    }
    return bound ? ExtRat(best) : ExtRat::infinity();
}

// The gauge (Minkowski functional) of P about the interior base point:
// 1 / ray_exit, with 0 for rays that never leave. Positively homogeneous of
// degree 1 in the direction.
inline Rat gauge(const RationalPolytope& P, const RayQuery& q) {
    ExtRat l = ray_exit(P, q);
    if (!l.is_finite()) return Rat(0);
    if (l.value() <= 0) throw OutsideDomain("gauge needs an interior base point");
    return Rat(1) / l.value();
}

}  // namespace lagflux
