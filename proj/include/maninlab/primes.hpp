#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace maninlab {

// Canonical factorization: primes strictly increasing, exponents >= 1,
// empty for n = 1.
struct Factorization {
    std::vector<std::pair<std::uint64_t, unsigned>> pairs;

    std::uint64_t value() const {
        std::uint64_t n = 1;
        for (auto [p, e] : pairs)
            for (unsigned i = 0; i < e; ++i) n *= p;
        return n;
    }
};

// Smallest-prime-factor sieve, built once and immutable afterwards.
// Inputs above the table are factored by trial division over the sieved
// primes; the artifact never needs to factor anything beyond spf_limit^2.
class Sieve {
  public:
    static const Sieve& instance();

    std::uint64_t spf_limit() const { return spf_.size() - 1; }
    const std::vector<std::uint32_t>& primes() const { return primes_; }
    bool is_prime(std::uint64_t n) const;

  private:
    explicit Sieve(std::uint32_t limit);
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
    friend Factorization factorize(std::uint64_t);
};

Factorization factorize(std::uint64_t n);   // requires n >= 1
int mobius(std::uint64_t n);
unsigned omega_distinct(std::uint64_t n);
std::uint64_t tau3(std::uint64_t n);        // # ordered triples d1*d2*d3 = n

// All positive divisors, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

// Distinct primes dividing any of the given values (values >= 1), ascending.
std::vector<std::uint64_t> prime_support(std::initializer_list<std::uint64_t> ns);
std::vector<std::uint64_t> prime_support(const std::vector<std::uint64_t>& ns);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

// Euler phi.
std::uint64_t totient(std::uint64_t n);

// Inverse of a mod m (gcd(a,m)=1 required).
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

}  // namespace maninlab
