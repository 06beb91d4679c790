#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "maninlab/primes.hpp"
#include "maninlab/rat.hpp"

namespace maninlab {

// =========================================================================
// The multiplicative functions of the main-term analysis:
//
//   phi_star(n)  = prod_{p|n} (1 - 1/p)
//   phi_plus(n)  = prod_{p|n} (1 + 1/p)^{-1}
//   phi_times(n) = prod_{p|n} (1 + 1/p)(1 - 1/p)^{-1}(1 + 2/p - 1/p^2)^{-1}
//
// All three depend only on the prime support of n, so each comes in a
// variant taking the support directly (products of the eta variables can
// exceed 64 bits; their supports never do).
// =========================================================================

Rat phi_star(std::uint64_t n);
Rat phi_plus(std::uint64_t n);
Rat phi_times(std::uint64_t n);
Rat phi_star_support(const std::vector<std::uint64_t>& primes);
Rat phi_plus_support(const std::vector<std::uint64_t>& primes);
Rat phi_times_support(const std::vector<std::uint64_t>& primes);

// sigma_{-lambda}(n) = sum_{k|n} k^{-lambda}, lambda > 0
double sigma_neg(double lambda, std::uint64_t n);

// psi_{a,b}(n)  = phi_star(n)/phi_star(gcd(a,n))            if gcd(n,b)=1, else 0
// psi'_{a,b}(n) = phi_star(n)^2/phi_star(gcd(a,n))^2
//                 * phi_plus(n)/phi_plus(gcd(a,n))           if gcd(n,b)=1, else 0
Rat psi(std::uint64_t a, std::uint64_t b, std::uint64_t n);
Rat psi_prime(std::uint64_t a, std::uint64_t b, std::uint64_t n);

// Dirichlet convolution (psi'_{a,b} * mu)(n) in closed form: supported on
// squarefree n with gcd(n,a) | b, where it equals prod_{p|n}(psi'(p) - 1).
Rat psi_prime_mobius(std::uint64_t a, std::uint64_t b, std::uint64_t n);

// Psi(a,b)  = phi_star(b) phi_plus(ab)/phi_star(ab)
// Psi'(a,b) = phi_star(b) phi_times(ab)
Rat Psi_cap(std::uint64_t a, std::uint64_t b);
Rat Psi_prime_cap(std::uint64_t a, std::uint64_t b);

// Certified enclosure of Xi = prod_p phi_times(p)^{-1}. The per-prime
// factor is 1 - (3p-1)/(p^2(p+1)), so |log factor| <= 4/p^2 for all p and
// the tail beyond pmax is at most sum_{n>pmax} 4/n^2 <= 4/pmax. Intervals
// nest as pmax grows.
Interval xi_constant(std::uint64_t pmax);

// Exact rational bracket around zeta(2) = pi^2/6 from the partial sum and
// the integral tail estimate.
std::pair<Rat, Rat> zeta2_bracket(unsigned terms);

struct ArithConstants {
    std::pair<Rat, Rat> zeta2;
    Interval xi;
};
ArithConstants arith_constants(std::uint64_t pmax, unsigned zeta_terms = 1000);

// Empirical check of the partial-sum asymptotics: sums psi_{a,b}(n) g(n) (or the
// psi' variant) over integers of [t1,t2] directly, computes the predicted
// main term zeta(2)^{-1} Psi(a,b) int g  (resp. Xi Psi'(a,b) int g), and
// reports the residual. The implied constants are inexplicit, so the
// residual is a report quantity only.
enum class PsiMode { psi, psi_prime };

struct WeightedPsiSum {
    double sum = 0.0;
    double main_term = 0.0;
    double residual = 0.0;
};

WeightedPsiSum weighted_psi_sum(std::uint64_t a, std::uint64_t b, double t1, double t2,
                                const std::function<double(double)>& g, PsiMode mode);

}  // namespace maninlab
