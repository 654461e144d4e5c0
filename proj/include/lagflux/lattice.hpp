#pragma once

// Exact lattice arithmetic: primitive decomposition of integer classes and
// the smallest positive shift of a rational point onto a scaled integer
// lattice along a rational direction. Everything here is exact; there are
// no tolerance parameters by design.

#include "lagflux/errors.hpp"
#include "lagflux/rational.hpp"

#include <optional>
#include <vector>

namespace lagflux {

using IntVec = std::vector<Int>;

// An integral class written as k * primitive with gcd(primitive) = 1, k >= 1.
// The zero class is rejected at construction (DegenerateClass); callers that
// want the bp(0) = +inf convention handle the zero class before reaching here.
struct LatticeClass {
    IntVec entries;
    Int multiplicity;
    IntVec primitive_part;

    size_t dim() const { return entries.size(); }
};

inline Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

inline LatticeClass decompose(const IntVec& v) {
    Int g = 0;
    for (const Int& e : v) g = gcd(g, boost::multiprecision::abs(e));
    if (g == 0) throw DegenerateClass("zero class has no primitive decomposition");
    LatticeClass c;
    c.entries = v;
    c.multiplicity = g;
    c.primitive_part.reserve(v.size());
    for (const Int& e : v) c.primitive_part.push_back(e / g);
    return c;
}

// The rational length of an integer vector: |c| where v = c * primitive.
inline Int rational_length(const IntVec& v) { return decompose(v).multiplicity; }

namespace detail {

// Arithmetic progression {residue + k*modulus : k in Z} with rational
// modulus > 0 and residue normalized into [0, modulus).
struct Progression {
    Rat residue;
    Rat modulus;
};

// Intersects two progressions by clearing denominators and running integer
// CRT. Returns nullopt when the residues are incompatible.
inline std::optional<Progression> merge(const Progression& a, const Progression& b) {
    Int D = boost::multiprecision::lcm(
        boost::multiprecision::lcm(den(a.residue), den(a.modulus)),
        boost::multiprecision::lcm(den(b.residue), den(b.modulus)));
    Int r1 = num(a.residue) * (D / den(a.residue));
    Int m1 = num(a.modulus) * (D / den(a.modulus));
    Int r2 = num(b.residue) * (D / den(b.residue));
    Int m2 = num(b.modulus) * (D / den(b.modulus));

    Int g = gcd(m1, m2);
    if (mod_floor(r2 - r1, g) != 0) return std::nullopt;

    // r = r1 + m1 * t solves r ≡ r2 (mod m2) with t ≡ (r2-r1)/g * inv(m1/g) (mod m2/g).
    Int m1g = m1 / g, m2g = m2 / g;
    Int diff = (r2 - r1) / g;
    // Extended gcd for the inverse of m1g mod m2g.
    Int x0 = 1, x1 = 0, aa = mod_floor(m1g, m2g), bb = m2g;
    // Invariants: x0*m1g ≡ aa, x1*m1g ≡ bb (mod m2g).
    while (bb != 0) {
        Int q = aa / bb;
        Int tmp = aa - q * bb;
        aa = bb;
        bb = tmp;
        tmp = x0 - q * x1;
        x0 = x1;
        x1 = tmp;
    }
    // aa == gcd(m1g, m2g) == 1 since we divided by g.
    Int inv = mod_floor(x0, m2g);
    Int t = mod_floor(diff * inv, m2g);
    Int L = m1 * m2g;  // lcm(m1, m2)
    Int r = mod_floor(r1 + m1 * t, L);
    return Progression{make_rat(r, D), make_rat(L, D)};
}

}  // namespace detail

// Smallest t > 0 with w - t*s in g*Z^n componentwise, or nullopt when no
// such t exists. Coordinates with s_i = 0 freeze to the membership test
// w_i in g*Z; the rest contribute arithmetic progressions of admissible t
// that are merged pairwise (CRT over rational moduli).
inline std::optional<Rat> smallest_shift(const RatVec& w, const RatVec& s, const Rat& g) {
    if (w.size() != s.size()) throw DimensionError("smallest_shift: dimension mismatch");
    if (g <= 0) throw std::domain_error("smallest_shift: lattice scale must be positive");

    std::optional<detail::Progression> acc;
    for (size_t i = 0; i < w.size(); ++i) {
        if (s[i] == 0) {
            Rat q = w[i] / g;
            if (den(q) != 1) return std::nullopt;  // frozen coordinate never lands
            continue;
        }
        Rat modulus = g / boost::multiprecision::abs(s[i]);
        Rat residue = rat_mod(w[i] / s[i], modulus);
        detail::Progression p{residue, modulus};
        if (!acc) {
            acc = p;
        } else {
            acc = detail::merge(*acc, p);
            if (!acc) return std::nullopt;
        }
    }
    if (!acc) return std::nullopt;  // all coordinates frozen: every t works, but
                                    // a direction with s = 0 is degenerate; treat
                                    // as no positive constraint -> no finite hit.
    return acc->residue > 0 ? acc->residue : acc->residue + acc->modulus;
}

}  // namespace lagflux
