#include "maninlab/primes.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

#include "maninlab/rat.hpp"

namespace maninlab {

namespace {
constexpr std::uint32_t kSpfLimit = 10'000'000;
}

Sieve::Sieve(std::uint32_t limit) : spf_(limit + 1, 0) {
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = i;
            primes_.push_back(i);
        }
        for (std::uint32_t p : primes_) {
            if (p > spf_[i] || (std::uint64_t)p * i > limit) break;
            spf_[p * i] = p;
        }
    }
}

const Sieve& Sieve::instance() {
    static const Sieve s(kSpfLimit);
    return s;
}

bool Sieve::is_prime(std::uint64_t n) const {
    if (n < 2) return false;
    if (n <= spf_limit()) return spf_[n] == n;
    for (std::uint32_t p : primes_) {
        if ((std::uint64_t)p * p > n) return true;
        if (n % p == 0) return false;
    }
    throw BudgetError("is_prime: value beyond sieve^2 range");
}

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw std::domain_error("factorize: n must be >= 1");
    const Sieve& s = Sieve::instance();
    Factorization f;
    if (n <= s.spf_limit()) {
        while (n > 1) {
            std::uint64_t p = s.spf_[n];
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.pairs.emplace_back(p, e);
        }
        return f;
    }
    for (std::uint32_t p : s.primes()) {
        if ((std::uint64_t)p * p > n) break;
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.pairs.emplace_back(p, e);
        }
    }
    if (n > 1) {
        // leftover cofactor is prime: any composite <= spf_limit^2 has a
        // sieved prime factor
        if (n > (std::uint64_t)s.spf_limit() * s.spf_limit())
            throw BudgetError("factorize: input beyond sieve^2 range");
        f.pairs.emplace_back(n, 1);
    }
    std::sort(f.pairs.begin(), f.pairs.end());
    return f;
}

int mobius(std::uint64_t n) {
    auto f = factorize(n);
    int r = 1;
    for (auto [p, e] : f.pairs) {
        (void)p;
        if (e > 1) return 0;
        r = -r;
    }
    return r;
}

unsigned omega_distinct(std::uint64_t n) {
    return (unsigned)factorize(n).pairs.size();
}

std::uint64_t tau3(std::uint64_t n) {
    // multiplicative; at p^e the ordered triples are the (e+2 choose 2)
    // compositions of e into three parts
    std::uint64_t t = 1;
    for (auto [p, e] : factorize(n).pairs) {
        (void)p;
        t *= (std::uint64_t)(e + 1) * (e + 2) / 2;
    }
    return t;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    auto f = factorize(n);
    std::vector<std::uint64_t> ds{1};
    for (auto [p, e] : f.pairs) {
        std::size_t sz = ds.size();
        std::uint64_t pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<std::uint64_t> prime_support(const std::vector<std::uint64_t>& ns) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t n : ns)
        for (auto [p, e] : factorize(n).pairs) {
            (void)e;
            ps.push_back(p);
        }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

std::vector<std::uint64_t> prime_support(std::initializer_list<std::uint64_t> ns) {
    return prime_support(std::vector<std::uint64_t>(ns));
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) { a %= b; std::swap(a, b); }
    return a;
}

std::uint64_t totient(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto [p, e] : factorize(n).pairs) {
        (void)e;
        r -= r / p;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 0;
    std::int64_t t = 0, newt = 1;
    std::int64_t r = (std::int64_t)m, newr = (std::int64_t)(a % m);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt; t = newt; newt = tmp;
        tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod: not invertible");
    if (t < 0) t += (std::int64_t)m;
    return (std::uint64_t)t;
}

}  // namespace maninlab
