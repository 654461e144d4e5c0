#pragma once

// Exact rational scalars used everywhere below. Backed by
// boost::multiprecision (arbitrary precision, header-only); no floating
// point enters any exact computation. "inf" is a first-class value for
// quantities living in (0, +inf].

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lagflux {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Rat make_rat(const Int& n, const Int& d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    return Rat(n, d);
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Serializes as "p" or "p/q", the problem-file literal format.
inline std::string to_string(const Rat& r) {
    Int n = num(r), d = den(r);
    std::string s = n.str();
    if (d != 1) s += "/" + d.str();
    return s;
}

inline Rat parse_rat(std::string_view text) {
    auto bad = [&] { throw ParseError("bad rational literal: '" + std::string(text) + "'"); };
    if (text.empty()) bad();
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return Rat(Int(std::string(text)));
        Int n{std::string(text.substr(0, slash))};
        Int d{std::string(text.substr(slash + 1))};
        if (d == 0) bad();
        return Rat(n, d);
    } catch (const std::exception&) {
        bad();
    }
    return Rat(0);  // unreachable
}

// floor(a / b) for exact integers, b != 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

// a mod b normalized into [0, |b|).
inline Int mod_floor(const Int& a, const Int& b) {
    Int r = a - floor_div(a, b) * b;
    return r;
}

// r mod m for rationals, m > 0, result in [0, m).
inline Rat rat_mod(const Rat& r, const Rat& m) {
    if (m <= 0) throw std::domain_error("rat_mod needs positive modulus");
    // r - floor(r/m)*m with exact integer floor.
    Rat q = r / m;
    Int fl = floor_div(num(q), den(q));
    return r - Rat(fl) * m;
}

// A value in (0, +inf]: either a finite rational or +infinity.
class ExtRat {
  public:
    ExtRat() : finite_(true), value_(0) {}
    ExtRat(Rat v) : finite_(true), value_(std::move(v)) {}
    ExtRat(int v) : finite_(true), value_(v) {}
    static ExtRat infinity() {
        ExtRat e;
        e.finite_ = false;
        return e;
    }

    bool is_finite() const { return finite_; }
    const Rat& value() const {
        if (!finite_) throw std::domain_error("value() on infinite ExtRat");
        return value_;
    }
    double to_double() const {
        return finite_ ? lagflux::to_double(value_) : std::numeric_limits<double>::infinity();
    }

    friend bool operator==(const ExtRat& a, const ExtRat& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }
    friend bool operator<(const ExtRat& a, const ExtRat& b) {
        if (!a.finite_) return false;
        if (!b.finite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const ExtRat& a, const ExtRat& b) { return a == b || a < b; }

    ExtRat operator/(const Rat& c) const {
        if (c <= 0) throw std::domain_error("ExtRat division by nonpositive rational");
        return finite_ ? ExtRat(value_ / c) : infinity();
    }
    ExtRat operator*(const Rat& c) const {
        if (c <= 0) throw std::domain_error("ExtRat scaling by nonpositive rational");
        return finite_ ? ExtRat(value_ * c) : infinity();
    }

    std::string str() const { return finite_ ? to_string(value_) : "inf"; }

  private:
    bool finite_;
    Rat value_;
};

inline std::ostream& operator<<(std::ostream& os, const ExtRat& e) { return os << e.str(); }

using RatVec = std::vector<Rat>;

inline std::string to_string(const RatVec& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_string(v[i]);
    }
    return s;
}

}  // namespace lagflux
