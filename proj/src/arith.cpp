#include "maninlab/arith.hpp"

#include <cmath>
#include <stdexcept>

#include "maninlab/quadrature.hpp"

namespace maninlab {

namespace {

std::vector<std::uint64_t> support(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (auto [p, e] : factorize(n).pairs) {
        (void)e;
        ps.push_back(p);
    }
    return ps;
}

}  // namespace

Rat phi_star_support(const std::vector<std::uint64_t>& primes) {
    Rat r(1);
    for (std::uint64_t p : primes) r *= rat((long)(p - 1), (long)p);
    return r;
}

Rat phi_plus_support(const std::vector<std::uint64_t>& primes) {
    Rat r(1);
    for (std::uint64_t p : primes) r *= rat((long)p, (long)(p + 1));
    return r;
}

Rat phi_times_support(const std::vector<std::uint64_t>& primes) {
    Rat r(1);
    for (std::uint64_t p : primes) {
        BigInt pp = BigInt((unsigned long)p);
        // (1+1/p)(1-1/p)^{-1}(1+2/p-1/p^2)^{-1} = (p+1)p^2 / ((p-1)(p^2+2p-1))
        r *= rat((pp + 1) * pp * pp, (pp - 1) * (pp * pp + 2 * pp - 1));
    }
    return r;
}

Rat phi_star(std::uint64_t n) { return phi_star_support(support(n)); }
Rat phi_plus(std::uint64_t n) { return phi_plus_support(support(n)); }
Rat phi_times(std::uint64_t n) { return phi_times_support(support(n)); }

double sigma_neg(double lambda, std::uint64_t n) {
    if (lambda <= 0) throw std::domain_error("sigma_neg: lambda must be > 0");
    double s = 0.0;
    for (std::uint64_t k : divisors(n)) s += std::pow((double)k, -lambda);
    return s;
}

Rat psi(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    if (gcd_u64(n, b) != 1) return Rat(0);
    return phi_star(n) / phi_star(gcd_u64(a, n));
}

Rat psi_prime(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    if (gcd_u64(n, b) != 1) return Rat(0);
    Rat s = phi_star(n) / phi_star(gcd_u64(a, n));
    return s * s * phi_plus(n) / phi_plus(gcd_u64(a, n));
}

Rat psi_prime_mobius(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    // (psi' * mu)(p^e) = psi'(p^e) - psi'(p^{e-1}) vanishes for e >= 2, and
    // at e = 1 equals psi'(p) - 1 with
    //   psi'(p) = (1-1/p)^2 (1+1/p)^{-1}   p !| ab
    //   psi'(p) = 1                        p | a, p !| b
    //   psi'(p) = 0                        p | b
    Rat r(1);
    for (auto [p, e] : factorize(n).pairs) {
        if (e > 1) return Rat(0);
        if (b % p == 0) {
            r *= rat(-1);
        } else if (a % p == 0) {
            return Rat(0);
        } else {
            BigInt pp = BigInt((unsigned long)p);
            // (1-1/p)^2(1+1/p)^{-1} - 1 = -(3p-1)/(p(p+1))
            r *= rat(-(3 * pp - 1), pp * (pp + 1));
        }
    }
    return r;
}

Rat Psi_cap(std::uint64_t a, std::uint64_t b) {
    auto ab = prime_support({a, b});
    return phi_star(b) * phi_plus_support(ab) / phi_star_support(ab);
}

Rat Psi_prime_cap(std::uint64_t a, std::uint64_t b) {
    return phi_star(b) * phi_times_support(prime_support({a, b}));
}

Interval xi_constant(std::uint64_t pmax) {
    if (pmax < 2) throw std::domain_error("xi_constant: pmax must be >= 2");
    const auto& primes = Sieve::instance().primes();
    if (pmax > Sieve::instance().spf_limit())
        throw BudgetError("xi_constant: pmax beyond sieve");
    // log factor_p = log(1 - (3p-1)/(p^2(p+1))); |.| <= 3/p^2 + 9/p^4 <= 4/p^2
    long double logpart = 0.0L;
    std::size_t nfac = 0;
    for (std::uint32_t p : primes) {
        if (p > pmax) break;
        long double d = (3.0L * p - 1.0L) / ((long double)p * p * (p + 1.0L));
        logpart += std::log1p(-d);
        ++nfac;
    }
    long double tail = 4.0L / (long double)pmax;
    // slack for the floating-point log accumulation
    long double slack = 1e-17L * (long double)(nfac + 1) * 64.0L;
    double lo = (double)std::exp(logpart - tail - slack);
    double hi = (double)std::exp(logpart + slack);
    return Interval(lo, hi);
}

std::pair<Rat, Rat> zeta2_bracket(unsigned terms) {
    if (terms == 0) throw std::domain_error("zeta2_bracket: need >= 1 term");
    Rat s(0);
    for (unsigned n = 1; n <= terms; ++n) s += rat(1, (long)n * (long)n);
    // sum_{n>N} 1/n^2 lies strictly between 1/(N+1) and 1/N
    return {s + rat(1, (long)terms + 1), s + rat(1, (long)terms)};
}

ArithConstants arith_constants(std::uint64_t pmax, unsigned zeta_terms) {
    return ArithConstants{zeta2_bracket(zeta_terms), xi_constant(pmax)};
}

WeightedPsiSum weighted_psi_sum(std::uint64_t a, std::uint64_t b, double t1, double t2,
                                const std::function<double(double)>& g, PsiMode mode) {
    WeightedPsiSum out;
    if (!(t1 <= t2) || t2 < 1.0) return out;  // no positive integers in range
    std::uint64_t n0 = (std::uint64_t)std::ceil(std::max(1.0, t1));
    std::uint64_t n1 = (std::uint64_t)std::floor(t2);
    double sum = 0.0, comp = 0.0;  // Kahan
    for (std::uint64_t n = n0; n <= n1; ++n) {
        Rat w = (mode == PsiMode::psi) ? psi(a, b, n) : psi_prime(a, b, n);
        if (w == 0) continue;
        double term = to_double(w) * g((double)n);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    out.sum = sum;
    double integral = adaptive_simpson(g, t1, t2, 1e-10);
    double front = (mode == PsiMode::psi)
                       ? to_double(Psi_cap(a, b)) * 6.0 / (M_PI * M_PI)
                       : to_double(Psi_prime_cap(a, b)) * xi_constant(100000).mid();
    out.main_term = front * integral;
    out.residual = out.sum - out.main_term;
    return out;
}

}  // namespace maninlab
