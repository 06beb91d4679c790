#pragma once

#include <gmpxx.h>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace maninlab {

// Exact rational arithmetic is carried by GMP throughout. mpq_class results
// of arithmetic are always canonical (gcd(num,den)=1, den>0); only direct
// construction from a num/den pair needs an explicit canonicalize().
using Rat = mpq_class;
using BigInt = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Exact conversion: every finite double is a binary rational.
inline Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("rat_from_double: not finite");
    return Rat(x);
}

inline double to_double(const Rat& q) { return q.get_d(); }

inline std::string to_string(const Rat& q) { return q.get_str(); }

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt rat_floor(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }

inline BigInt rat_ceil(const Rat& q) {
    BigInt c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return c;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// -----------------------------------------------------------------------
// Closed interval [lo,hi] of doubles, used for every certified real
// quantity (Xi, omega_infty, Euler products, c_{V,H}).
// -----------------------------------------------------------------------
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(l <= h)) throw std::invalid_argument("Interval: lo > hi");
    }
    static Interval point(double x) { return Interval(x, x); }

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }

    Interval operator*(const Interval& o) const {
        double a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return Interval(std::min(std::min(a, b), std::min(c, d)),
                        std::max(std::max(a, b), std::max(c, d)));
    }
    Interval operator*(double s) const {
        return s >= 0 ? Interval(lo * s, hi * s) : Interval(hi * s, lo * s);
    }
    Interval operator+(const Interval& o) const { return Interval(lo + o.lo, hi + o.hi); }
};

inline Interval interval_of(const Rat& q) {
    double d = to_double(q);
    return Interval(std::nextafter(d, -1.0 / 0.0), std::nextafter(d, 1.0 / 0.0));
}

// -----------------------------------------------------------------------
// Error taxonomy shared by all modules; the CLI maps these to exit codes.
// -----------------------------------------------------------------------
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace maninlab
