#pragma once

// Admissible quadruples (X0, X1, Y0, Y1): combinatorial construction for
// the torus fibration arcs, the surface strip model, and the Chekanov
// rotating quadruple, plus geometric region views (membership tests and
// deterministic samplers) consumed by the chord dynamics. Regions are
// stored combinatorially; samplers materialize points on demand.

#include "lagflux/errors.hpp"
#include "lagflux/lattice.hpp"
#include "lagflux/rational.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace lagflux {

enum class RegionName { X0, X1, Y0, Y1 };

inline const char* region_name(RegionName r) {
    switch (r) {
        case RegionName::X0: return "X0";
        case RegionName::X1: return "X1";
        case RegionName::Y0: return "Y0";
        case RegionName::Y1: return "Y1";
    }
    return "?";
}

// Counterclockwise residue labeling: arcs 1,2,3,0 mod 4 carry X0, Y1, X1, Y0.
inline RegionName residue_label(size_t one_based_index) {
    switch (one_based_index % 4) {
        case 1: return RegionName::X0;
        case 2: return RegionName::Y1;
        case 3: return RegionName::X1;
        default: return RegionName::Y0;
    }
}

// ---------------------------------------------------------------------------
// Circle-arc partition for torus fibrations.

struct ArcPartition {
    // Arc i is [breakpoints[i], breakpoints[i+1]) cyclically, length sums to 1.
    std::vector<Rat> breakpoints;
    std::vector<RegionName> labels;

    size_t arcs() const { return labels.size(); }

    RegionName label_at(const Rat& t) const {
        Rat u = rat_mod(t, Rat(1));
        for (size_t i = 0; i < breakpoints.size(); ++i) {
            Rat lo = breakpoints[i];
            Rat hi = (i + 1 < breakpoints.size()) ? breakpoints[i + 1] : breakpoints[0] + 1;
            Rat uu = u;
            if (uu < lo) uu += 1;
            if (uu >= lo && uu < hi) return labels[i];
        }
        return labels.back();
    }
};

// The quadruple associated to a torus fibration class: the fibration is the
// linear one defined by the primitive part, and the multiplicity k cuts the
// circle into 4k equal arcs with the residue labeling. A negative class
// keeps the fibration of the canonical primitive and swaps the Y labels,
// which realizes the orientation reversal combinatorially.
struct TorusQuadruple {
    size_t dim = 0;
    IntVec primitive;  // canonical: first nonzero entry positive
    bool reversed = false;
    Int multiplicity = 1;
    ArcPartition partition;

    RegionName region_of(const RatVec& torus_point) const {
        if (torus_point.size() != dim) throw DimensionError("torus point dimension mismatch");
        Rat f = 0;
        for (size_t i = 0; i < dim; ++i) f += Rat(primitive[i]) * torus_point[i];
        return partition.label_at(f);
    }
};

inline TorusQuadruple torus_quadruple(size_t n, const IntVec& alpha) {
    if (alpha.size() != n) throw DimensionError("class dimension mismatch");
    LatticeClass cls = decompose(alpha);  // throws DegenerateClass on zero

    TorusQuadruple q;
    q.dim = n;
    q.primitive = cls.primitive_part;
    q.multiplicity = cls.multiplicity;
    for (const Int& e : q.primitive) {
        if (e == 0) continue;
        if (e < 0) {
            q.reversed = true;
            for (Int& f : q.primitive) f = -f;
        }
        break;
    }

    unsigned k = (unsigned)q.multiplicity;
    size_t arcs = 4u * k;
    for (size_t i = 0; i < arcs; ++i) {
        q.partition.breakpoints.push_back(make_rat(Int(i), Int(arcs)));
        RegionName l = residue_label(i + 1);
        if (q.reversed) {
            if (l == RegionName::Y0) l = RegionName::Y1;
            else if (l == RegionName::Y1) l = RegionName::Y0;
        }
        q.partition.labels.push_back(l);
    }
    return q;
}

// ---------------------------------------------------------------------------
// Labeled intervals shared by the planar strip models.

struct LabeledInterval {
    Rat lo, hi;
    RegionName label;
};

// Top-edge partition of the strip model on [0, A] x [0, 1]: 4k-3 closed
// intervals ordered right to left, gamma_1 of length A/k, lengths eps for
// i = 0,2,3 mod 4 and A/k - 3 eps for the remaining i = 1 mod 4. Labels
// follow the counterclockwise walk of the boundary (bottom edge is the X0
// arc, right edge the Y1 arc), so top interval i carries:
// i=1 mod 4 -> X1, i=2 -> Y0, i=3 -> X0, i=0 -> Y1.
inline RegionName strip_top_label(size_t i) {
    switch (i % 4) {
        case 1: return RegionName::X1;
        case 2: return RegionName::Y0;
        case 3: return RegionName::X0;
        default: return RegionName::Y1;
    }
}

struct SurfacePartition {
    Rat A, eps;
    unsigned k = 1;
    std::vector<LabeledInterval> top;  // in x-coordinates, left to right

    std::vector<Rat> top_lengths_right_to_left() const {
        std::vector<Rat> out;
        for (auto it = top.rbegin(); it != top.rend(); ++it) out.push_back(it->hi - it->lo);
        return out;
    }
};

inline SurfacePartition surface_model_partition(const Rat& A, unsigned k, const Rat& eps) {
    if (A <= 0 || eps <= 0 || k == 0) throw InvalidPartition("need A > 0, eps > 0, k >= 1");
    Rat ramp = A / Rat(k) - 3 * eps;
    if (k > 1 && ramp <= 0) throw InvalidPartition("eps too large: A/k - 3 eps must be positive");

    SurfacePartition p;
    p.A = A;
    p.eps = eps;
    p.k = k;
    size_t count = 4 * k - 3;
    // Build right to left, then store left to right.
    std::vector<Rat> lengths;
    for (size_t i = 1; i <= count; ++i) {
        if (i == 1) lengths.push_back(A / Rat(k));
        else if (i % 4 == 1) lengths.push_back(ramp);
        else lengths.push_back(eps);
    }
    Rat hi = A;
    std::vector<LabeledInterval> rl;
    for (size_t i = 1; i <= count; ++i) {
        Rat lo = hi - lengths[i - 1];
        rl.push_back({lo, hi, strip_top_label(i)});
        hi = lo;
    }
    if (hi != 0) throw InvalidPartition("partition lengths do not sum to A");
    p.top.assign(rl.rbegin(), rl.rend());
    return p;
}

// Exact disjointness of the strip quadruple: X arcs (and Y arcs) never share
// a point. Adjacent closed intervals share endpoints, so the check is that
// same-family labels are never adjacent or equal.
inline bool strip_quadruple_admissible(const SurfacePartition& p) {
    auto family = [](RegionName r) { return (r == RegionName::X0 || r == RegionName::X1) ? 0 : 1; };
    for (size_t i = 0; i + 1 < p.top.size(); ++i) {
        if (p.top[i].label != p.top[i + 1].label &&
            family(p.top[i].label) == family(p.top[i + 1].label))
            return false;
    }
    // Bottom edge (X0) touches the leftmost/rightmost top intervals only at
    // corners of the other edges; left edge (Y0) meets the last top interval,
    // right edge (Y1) meets gamma_1. Those pairs must not be same-family.
    if (!p.top.empty()) {
        if (p.top.back().label == RegionName::Y1) return false;   // left corner joins Y0 edge
        if (p.top.front().label == RegionName::Y0) return false;  // right corner joins Y1 edge
    }
    return true;
}

// ---------------------------------------------------------------------------
// Chekanov rotating quadruple on D(k) x T*_k S^1.

struct ChekanovQuadruple {
    Rat a;        // boundary circle encloses area a
    unsigned m = 1;
    Int n = 0;    // rotation coefficient
    Rat k;        // ambient disk area and cotangent radius
    std::vector<LabeledInterval> arcs;  // xi-fractions of the circle, 4m arcs

    double boundary_radius() const { return std::sqrt(to_double(a) / std::numbers::pi); }
};

inline RegionName chekanov_label(size_t j) {
    switch (j % 4) {
        case 1: return RegionName::X0;
        case 2: return RegionName::Y1;
        case 3: return RegionName::X1;
        default: return RegionName::Y0;
    }
}

inline ChekanovQuadruple chekanov_quadruple(const Rat& a, unsigned m, const Int& n,
                                            const Rat& k) {
    if (a <= 0 || m == 0) throw InvalidModel("need a > 0 and m >= 1");
    Rat C = 4 * a * Rat(boost::multiprecision::abs(n));
    if (!(k > a) || !(k > C))
        throw InvalidModel("ambient size too small: need k > a and k > 4a|n|");
    ChekanovQuadruple q;
    q.a = a;
    q.m = m;
    q.n = n;
    q.k = k;
    for (size_t j = 1; j <= 4 * (size_t)m; ++j)
        q.arcs.push_back({make_rat(Int(j - 1), Int(4 * m)), make_rat(Int(j), Int(4 * m)),
                          chekanov_label(j)});
    return q;
}

// Exact pairwise disjointness on the combinatorial arc data.
inline bool arcs_admissible(const std::vector<LabeledInterval>& arcs) {
    auto family = [](RegionName r) { return (r == RegionName::X0 || r == RegionName::X1) ? 0 : 1; };
    size_t n = arcs.size();
    for (size_t i = 0; i < n; ++i) {
        const auto& a = arcs[i];
        const auto& b = arcs[(i + 1) % n];
        if (a.label != b.label && family(a.label) == family(b.label)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Geometric region views for the dynamics: deterministic low-discrepancy
// sampling plus tolerant membership. Phase points are ordered as Darboux
// pairs (p_1, q_1, p_2, q_2, ...).

inline double van_der_corput(uint64_t i, uint64_t base = 2) {
    double x = 0, f = 1.0 / (double)base;
    for (++i; i; i /= base) {
        x += f * (double)(i % base);
        f /= (double)base;
    }
    return x;
}

struct Segment2 {
    std::array<double, 2> a, b;
    double len() const { return std::hypot(b[0] - a[0], b[1] - a[1]); }
};

// Distance from a point to a segment.
inline double segment_distance(const Segment2& s, double x, double y) {
    double dx = s.b[0] - s.a[0], dy = s.b[1] - s.a[1];
    double L2 = dx * dx + dy * dy;
    double t = L2 > 0 ? ((x - s.a[0]) * dx + (y - s.a[1]) * dy) / L2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(x - (s.a[0] + t * dx), y - (s.a[1] + t * dy));
}

// A union of segments in one symplectic plane.
struct SegmentChain {
    std::vector<Segment2> segs;

    double total_len() const {
        double L = 0;
        for (const auto& s : segs) L += s.len();
        return L;
    }
    std::array<double, 2> at(double t) const {  // t in [0,1), arc-length parameter
        double L = total_len();
        double target = t * L;
        for (const auto& s : segs) {
            double l = s.len();
            if (target <= l || &s == &segs.back()) {
                double u = l > 0 ? std::clamp(target / l, 0.0, 1.0) : 0.0;
                return {s.a[0] + u * (s.b[0] - s.a[0]), s.a[1] + u * (s.b[1] - s.a[1])};
            }
            target -= l;
        }
        return segs.front().a;
    }
    double distance(double x, double y) const {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& s : segs) d = std::min(d, segment_distance(s, x, y));
        return d;
    }
};

// Abstract geometric quadruple: the dynamics samples X0 from it, and hit
// detection interpolates the distance-to-region along crossing steps.
class QuadrupleGeometry {
  public:
    virtual ~QuadrupleGeometry() = default;
    virtual size_t ambient_dim() const = 0;
    virtual std::vector<double> sample(RegionName r, uint64_t index, uint64_t total) const = 0;
    virtual double distance(RegionName r, const std::vector<double>& z) const = 0;
    bool contains(RegionName r, const std::vector<double>& z, double tol) const {
        return distance(r, z) <= tol;
    }
};

// Planar strip quadruple on [0, A] x [0, 1] (surface model; also reused by
// the split model's (p_n, q_n) factor with values scaled to [0, width]).
class StripGeometry final : public QuadrupleGeometry {
  public:
    StripGeometry(const SurfacePartition& p, double height = 1.0)
        : height_(height) {
        double A = to_double(p.A);
        chain(RegionName::X0).segs.push_back({{0, 0}, {A, 0}});
        chain(RegionName::Y0).segs.push_back({{0, 0}, {0, height_}});
        chain(RegionName::Y1).segs.push_back({{A, 0}, {A, height_}});
        for (const auto& iv : p.top)
            chain(iv.label).segs.push_back(
                {{to_double(iv.lo), height_}, {to_double(iv.hi), height_}});
    }

    size_t ambient_dim() const override { return 2; }

    std::vector<double> sample(RegionName r, uint64_t i, uint64_t) const override {
        auto pt = chain(r).at(van_der_corput(i));
        return {pt[0], pt[1]};
    }

    std::array<double, 2> at(RegionName r, double t) const { return chain(r).at(t); }

    double distance(RegionName r, const std::vector<double>& z) const override {
        return chain(r).distance(z[0], z[1]);
    }

    const SegmentChain& chain(RegionName r) const { return chains_[(int)r]; }

  private:
    SegmentChain& chain(RegionName r) { return chains_[(int)r]; }
    std::array<SegmentChain, 4> chains_;
    double height_;
};

// Product quadruple Pi_1 x strip-edges for the split model, reduced to the
// (p_1, q_1, p_n, q_n) coordinates that carry all the dynamics.
class SplitGeometry final : public QuadrupleGeometry {
  public:
    SplitGeometry(double side, const SurfacePartition& p) : side_(side), strip_(p) {
        square_.segs.push_back({{0, 0}, {side, 0}});
        square_.segs.push_back({{side, 0}, {side, side}});
        square_.segs.push_back({{side, side}, {0, side}});
        square_.segs.push_back({{0, side}, {0, 0}});
    }

    size_t ambient_dim() const override { return 4; }

    std::vector<double> sample(RegionName r, uint64_t i, uint64_t) const override {
        auto pq = square_.at(van_der_corput(i, 2));
        auto xe = strip_.at(r, van_der_corput(i, 3));
        return {pq[0], pq[1], xe[0], xe[1]};
    }

    double distance(RegionName r, const std::vector<double>& z) const override {
        return std::max(square_.distance(z[0], z[1]), strip_.distance(r, {z[2], z[3]}));
    }

    const SegmentChain& square() const { return square_; }
    const StripGeometry& strip() const { return strip_; }

  private:
    double side_;
    SegmentChain square_;
    StripGeometry strip_;
};

// Chekanov quadruple in coordinates (x, y, p, theta): the arc pattern on the
// boundary circle, rotated by R(n theta) fiberwise, at p = 0.
class ChekanovGeometry final : public QuadrupleGeometry {
  public:
    explicit ChekanovGeometry(const ChekanovQuadruple& q)
        : m_(q.m), n_((long)q.n), radius_(q.boundary_radius()) {
        for (const auto& arc : q.arcs)
            arcs_.push_back({to_double(arc.lo), to_double(arc.hi), arc.label});
    }

    size_t ambient_dim() const override { return 4; }

    std::vector<double> sample(RegionName r, uint64_t i, uint64_t) const override {
        std::vector<std::pair<double, double>> mine;
        for (const auto& a : arcs_)
            if (a.label == r) mine.push_back({a.lo, a.hi});
        double u = van_der_corput(i, 2);
        double theta = van_der_corput(i, 3);
        size_t which = (size_t)(u * (double)mine.size());
        which = std::min(which, mine.size() - 1);
        double frac = u * (double)mine.size() - (double)which;
        double xi = mine[which].first + frac * (mine[which].second - mine[which].first);
        double phi = 2 * std::numbers::pi * (xi + (double)n_ * theta);
        return {radius_ * std::cos(phi), radius_ * std::sin(phi), 0.0, theta};
    }

    double distance(RegionName r, const std::vector<double>& z) const override {
        double rad = std::hypot(z[0], z[1]);
        double phi = std::atan2(z[1], z[0]) / (2 * std::numbers::pi);
        double xi = phi - (double)n_ * z[3];
        xi -= std::floor(xi);
        double arc_gap = std::numeric_limits<double>::infinity();
        for (const auto& a : arcs_) {
            if (a.label != r) continue;
            for (double shift : {-1.0, 0.0, 1.0}) {
                double u = xi + shift;
                double g = (u < a.lo) ? a.lo - u : (u > a.hi ? u - a.hi : 0.0);
                arc_gap = std::min(arc_gap, g);
            }
        }
        double arc_len = arc_gap * 2 * std::numbers::pi * radius_;
        return std::max({std::abs(z[2]), std::abs(rad - radius_), arc_len});
    }

  private:
    struct Arc {
        double lo, hi;
        RegionName label;
    };
    unsigned m_;
    long n_;
    double radius_;
    std::vector<Arc> arcs_;
};

// Interval quadruple on the core circle slice of the annulus Z_eps, and of
// the plain unit box (used by pb estimates on simple product pairs).
class IntervalGeometry final : public QuadrupleGeometry {
  public:
    // intervals on the line y = y0 in the (x, y) plane.
    IntervalGeometry(std::vector<LabeledInterval> arcs, double y0) : y0_(y0) {
        for (const auto& iv : arcs)
            chains_[(int)iv.label].segs.push_back(
                {{to_double(iv.lo), y0_}, {to_double(iv.hi), y0_}});
    }

    size_t ambient_dim() const override { return 2; }

    std::vector<double> sample(RegionName r, uint64_t i, uint64_t) const override {
        auto pt = chains_[(int)r].at(van_der_corput(i));
        return {pt[0], pt[1]};
    }
    double distance(RegionName r, const std::vector<double>& z) const override {
        return chains_[(int)r].distance(z[0], z[1]);
    }

  private:
    std::array<SegmentChain, 4> chains_;
    double y0_;
};

// The annulus partition: 4k+1 equal subintervals of (-eps, eps) on y = 0,
// labels i=1 mod 4 -> X0, 2 -> Y1, 3 -> X1, 0 -> Y0 (left to right).
inline std::vector<LabeledInterval> annulus_partition(const Rat& eps, unsigned k) {
    if (eps <= 0 || k == 0) throw InvalidPartition("need eps > 0 and k >= 1");
    size_t count = 4 * (size_t)k + 1;
    std::vector<LabeledInterval> arcs;
    Rat width = 2 * eps / Rat((unsigned)count);
    for (size_t i = 1; i <= count; ++i) {
        Rat lo = -eps + Rat((unsigned)(i - 1)) * width;
        arcs.push_back({lo, lo + width, residue_label(i)});
    }
    return arcs;
}

// Edges of the unit box as a quadruple: X0 bottom, X1 top, Y0 left, Y1 right.
class BoxEdgeGeometry final : public QuadrupleGeometry {
  public:
    BoxEdgeGeometry() {
        chains_[(int)RegionName::X0].segs.push_back({{0, 0}, {1, 0}});
        chains_[(int)RegionName::X1].segs.push_back({{0, 1}, {1, 1}});
        chains_[(int)RegionName::Y0].segs.push_back({{0, 0}, {0, 1}});
        chains_[(int)RegionName::Y1].segs.push_back({{1, 0}, {1, 1}});
    }
    size_t ambient_dim() const override { return 2; }
    std::vector<double> sample(RegionName r, uint64_t i, uint64_t) const override {
        auto pt = chains_[(int)r].at(van_der_corput(i));
        return {pt[0], pt[1]};
    }
    double distance(RegionName r, const std::vector<double>& z) const override {
        return chains_[(int)r].distance(z[0], z[1]);
    }

  private:
    std::array<SegmentChain, 4> chains_;
};

}  // namespace lagflux
