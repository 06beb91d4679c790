#pragma once

#include <cstdint>

#include "maninlab/polytope.hpp"
#include "maninlab/rat.hpp"

namespace maninlab {

// =========================================================================
// Every ingredient of the expected leading constant
//
//   c_{V,H} = alpha(V~) beta(V~) omega_inf prod_p (1-1/p)^7 omega_p
//
// computed from independent sources: alpha both from the Weyl-group closed
// form 1/120 * 1/(#W(A2)^2 #W(A1)) and as one third of an exact polytope
// volume; omega_p from the closed form 1 + 7/p + 1/p^2 with a mod-p^n
// brute-force oracle; omega_inf by two numeric schemes related by the
// change of variables x1 = t7^3, x2 = t8^2, x3 = t6 t7 t8.
// =========================================================================

Rat alpha_weyl();  // 1/8640

// the six-dimensional polytope whose volume is 1/2880 (= 3 alpha)
PolytopeH peyre_polytope();
Rat alpha_polytope();  // polytope volume / 3

Rat omega_p(std::uint64_t p);  // 1 + 7/p + 1/p^2, p prime

// #{x mod p^n : f(x) = 0 mod p^n}; scan budget p^{4n} <= 1e9
long long count_solutions_padic(std::uint64_t p, unsigned n);
double padic_density(std::uint64_t p, unsigned n);  // count / p^{3n}

// h(t8,t6,t7) = max{ t6^2 |t7^2 + t6 t8|, t7, |t8|, t6 t7 |t8| }
double h_eval(double t8, double t6, double t7);

// length of the admissible t8-interval at fixed (t6,t7), optionally with
// the extra conditions t <= |t6 t8 + t7^2| and |t8| >= t8_min
double t8_section_length(double t6, double t7, double t = 0.0, double t8_min = 0.0);

// method A: closed-form inner interval + adaptive 2D quadrature with an
// analytic tail beyond t6 = T0; method B: 2D quasi-random integration of
// the t6-section measure obtained by cubic root isolation
Interval omega_infty_method_a(double tolerance);
Interval omega_infty_method_b(std::uint64_t samples);
Interval omega_infty(double tolerance);

// certified enclosure of prod_p (1-1/p)^7 (1 + 7/p + 1/p^2)
Interval euler_product(std::uint64_t pmax);

struct PeyreBreakdown {
    Rat alpha;
    Rat beta;
    Interval omega_inf;
    Interval euler;
    std::uint64_t pmax = 0;
    Interval c;
};
PeyreBreakdown c_vh(double tolerance, std::uint64_t pmax);

// Monte Carlo estimate of the x-space integral
//   2 int dx1 dx2 dx3 / (x1 x2)  over  0 < x3^2|x1+x3| <= x1 x2, x_i <= 1
// against the t-space value (the integrand is singular; importance
// substitution x1 = u^4, x2 = v^4 keeps the variance finite).
struct JacobianReport {
    double estimate = 0.0;
    double std_error = 0.0;
    Interval reference;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};
JacobianReport jacobian_crosscheck(std::uint64_t samples, std::uint64_t seed,
                                   unsigned threads = 0);

}  // namespace maninlab
