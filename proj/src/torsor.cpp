#include "maninlab/torsor.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "maninlab/parallel.hpp"
#include "maninlab/primes.hpp"
#include "maninlab/rat.hpp"

namespace maninlab {

namespace {

long long g(long long a, long long b) { return std::gcd(std::abs(a), std::abs(b)); }

long long exact_div(long long a, long long b, const char* what) {
    if (b == 0 || a % b != 0) throw InvariantError(std::string("cascade: ") + what);
    return a / b;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TorsorTuple to_torsor(const ProjPoint& p) {
    if (!on_surface(p)) throw std::domain_error("to_torsor: point not on V");
    if (on_line(p)) throw std::domain_error("to_torsor: point lies on a line");
    if (p.x1 <= 0) throw std::domain_error("to_torsor: requires x1 > 0");
    if (!is_primitive(p)) throw std::domain_error("to_torsor: point not primitive");

    long long e1 = g(g(p.x0, p.x2), p.x3);
    long long y0 = g(g(p.x1, p.x2), p.x3);
    long long y2 = g(g(p.x0, p.x1), p.x3);
    long long x0p = exact_div(p.x0, e1 * y2, "e1*y2 | x0");
    long long x1p = exact_div(p.x1, y0 * y2, "y0*y2 | x1");
    long long x2p = exact_div(p.x2, e1 * y0, "e1*y0 | x2");
    long long x3p = exact_div(p.x3, e1 * y0 * y2, "e1*y0*y2 | x3");

    long long e2 = g(y0, x2p);
    long long e3 = y0 / e2;
    long long x2pp = x2p / e2;
    long long x1pp = exact_div(x1p, e3, "e3 | x1'");

    long long e4 = g(y2, x0p);
    long long e5 = y2 / e4;
    long long x0pp = x0p / e4;
    long long z1 = exact_div(x1pp, e5, "e5 | x1''");

    long long e6 = g(x0pp, x3p);
    long long e9 = exact_div(x0pp, e6 * e6, "e6^2 | x0''");
    long long x3pp = x3p / e6;

    long long g8 = g(x2pp, x3pp);
    long long e8 = x3pp > 0 ? g8 : -g8;
    long long e10 = exact_div(x2pp, e8 * e8, "e8^2 | x2''");
    long long e7 = exact_div(x3pp, e8, "e8 | x3''");

    if (e7 <= 0 || z1 != e7 * e7 * e7)
        throw InvariantError("cascade: z1 != eta7^3");

    TorsorTuple t{e1, e2, e3, e4, e5, e6, e7, e8, e9, e10};
    if (!satisfies_torsor_equation(t))
        throw InvariantError("cascade: torsor equation fails");
    if (!check_coprimality(t).empty())
        throw InvariantError("cascade: coprimality conditions fail");
    if (!check_heights(t, height(p)))
        throw InvariantError("cascade: height system fails at H(p)");
    return t;
}

namespace {

long long checked_product(std::initializer_list<long long> xs) {
    __int128 acc = 1;
    for (long long x : xs) {
        acc *= x;
        if (acc > (__int128)4e18) throw BudgetError("height monomial overflows 64 bits");
    }
    return (long long)acc;
}

}  // namespace

std::array<long long, 4> height_monomials(const TorsorTuple& t) {
    long long m0 = checked_product({t.e1, t.e4, t.e4, t.e5, t.e6, t.e6, std::abs(t.e9)});
    long long m1 = checked_product({t.e2, t.e3, t.e3, t.e4, t.e5, t.e5, t.e7, t.e7, t.e7});
    long long m2 = checked_product({t.e1, t.e2, t.e2, t.e3, t.e8, t.e8, std::abs(t.e10)});
    long long m3 = checked_product({t.e1, t.e2, t.e3, t.e4, t.e5, t.e6, t.e7, std::abs(t.e8)});
    return {m0, m1, m2, m3};
}

long long tuple_height(const TorsorTuple& t) {
    auto m = height_monomials(t);
    return *std::max_element(m.begin(), m.end());
}

bool check_heights(const TorsorTuple& t, long long B) {
    if (B == kNoHeightBound) return true;
    auto m = height_monomials(t);
    return m[0] <= B && m[1] <= B && m[2] <= B && m[3] <= B;
}

HeightSystem height_system(const TorsorTuple& t, long long B) {
    HeightSystem h;
    h.B = B;
    h.monomials = height_monomials(t);
    h.satisfied = check_heights(t, B);
    return h;
}

bool satisfies_torsor_equation(const TorsorTuple& t) {
    __int128 lhs = (__int128)t.e1 * t.e6 * t.e8 + (__int128)t.e3 * t.e5 * t.e7 * t.e7 +
                   (__int128)t.e9 * t.e10;
    return lhs == 0;
}

namespace {

// gcd(a, prod bs) == 1, tested without forming the product
bool coprime_to_all(long long a, std::initializer_list<long long> bs) {
    long long r = std::abs(a);
    for (long long b : bs)
        if (std::gcd(r, std::abs(b)) != 1) return false;
    return true;
}

}  // namespace

std::vector<std::string> check_coprimality(const TorsorTuple& t) {
    std::vector<std::string> bad;
    if (!coprime_to_all(t.e9, {t.e1, t.e2, t.e3, t.e5, t.e6, t.e7, t.e8})) bad.push_back("gcd1");
    if (!coprime_to_all(t.e1, {t.e2, t.e3, t.e4, t.e5, t.e7, t.e10})) bad.push_back("gcd2");
    if (!coprime_to_all(t.e6, {t.e2, t.e3, t.e5, t.e7, t.e10})) bad.push_back("gcd3");
    if (!coprime_to_all(t.e8, {t.e3, t.e4, t.e5, t.e6, t.e7, t.e10})) bad.push_back("gcd4");
    if (!coprime_to_all(t.e7, {t.e2, t.e4, t.e10})) bad.push_back("gcd5");
    if (std::gcd(t.e2 * t.e3, t.e4 * t.e5) != 1) bad.push_back("gcd6");
    if (!coprime_to_all(t.e10, {t.e3, t.e4, t.e5})) bad.push_back("gcd7");
    return bad;
}

ProjPoint from_torsor(const TorsorTuple& t) {
    if (t.e1 < 1 || t.e2 < 1 || t.e3 < 1 || t.e4 < 1 || t.e5 < 1 || t.e6 < 1 || t.e7 < 1)
        throw std::domain_error("from_torsor: eta1..eta7 must be positive");
    if (t.e8 == 0 || t.e9 == 0 || t.e10 == 0)
        throw std::domain_error("from_torsor: eta8, eta9, eta10 must be nonzero");
    if (!satisfies_torsor_equation(t))
        throw std::domain_error("from_torsor: torsor equation violated");
    auto bad = check_coprimality(t);
    if (!bad.empty())
        throw std::domain_error("from_torsor: coprimality violated (" + bad.front() + ")");

    auto m = height_monomials(t);  // also guards against 64-bit overflow
    ProjPoint p;
    p.x0 = t.e9 > 0 ? m[0] : -m[0];
    p.x1 = m[1];
    p.x2 = (t.e10 > 0) ? m[2] : -m[2];
    p.x3 = (t.e8 > 0) ? m[3] : -m[3];

    // primitivity is a consequence of gcd1..gcd7; any failure here is a bug
    if (!is_primitive(p)) throw InvariantError("from_torsor: image not primitive");
    if (!on_surface(p)) throw InvariantError("from_torsor: image not on V");
    if (on_line(p)) throw InvariantError("from_torsor: image on a line");
    if (p.x1 <= 0) throw InvariantError("from_torsor: image has x1 <= 0");
    return p;
}

namespace {

// Enumerates T(Bcap) in the order (eta2,eta3,eta4,eta5,eta7) constrained by
// height2, then (eta1,eta6,eta8) constrained by height4, then the divisor
// pairs eta9*eta10 = -(eta1 eta6 eta8 + eta3 eta5 eta7^2), filtered by
// height1, height3 and gcd1..gcd7. Pairwise-coprimality of the three
// torsor monomials is asserted for every emitted tuple.
struct OuterTuple {
    long long e2, e3, e4, e5, e7;
};

std::vector<OuterTuple> outer_tuples(long long B) {
    std::vector<OuterTuple> out;
    for (long long e2 = 1; e2 <= B; ++e2)
        for (long long e3 = 1; e2 * e3 * e3 <= B; ++e3)
            for (long long e4 = 1; e2 * e3 * e3 * e4 <= B; ++e4) {
                if (std::gcd(e2 * e3, e4) != 1) continue;
                for (long long e5 = 1; e2 * e3 * e3 * e4 * e5 * e5 <= B; ++e5) {
                    if (std::gcd(e2 * e3, e5) != 1) continue;  // gcd6
                    for (long long e7 = 1;
                         e2 * e3 * e3 * e4 * e5 * e5 * e7 * e7 * e7 <= B; ++e7) {
                        if (std::gcd(e7, e2 * e4) != 1) continue;  // gcd5 (eta10 part later)
                        out.push_back({e2, e3, e4, e5, e7});
                    }
                }
            }
    return out;
}

template <typename Sink>
void enumerate_torsor(long long B, const OuterTuple& o, Sink&& sink) {
    const long long e2 = o.e2, e3 = o.e3, e4 = o.e4, e5 = o.e5, e7 = o.e7;
    const long long h4base = e2 * e3 * e4 * e5 * e7;
    const long long T2 = e3 * e5 * e7 * e7;
    for (long long e1 = 1; e1 * h4base <= B; ++e1) {
        if (std::gcd(e1, e2 * e3 * e4 * e5 * e7) != 1) continue;  // gcd2 w/o eta10
        for (long long e6 = 1; e1 * e6 * h4base <= B; ++e6) {
            if (std::gcd(e6, e2 * e3 * e5 * e7) != 1) continue;  // gcd3 w/o eta10
            for (long long a8 = 1; e1 * e6 * a8 * h4base <= B; ++a8) {
                if (std::gcd(a8, e3 * e4 * e5 * e6 * e7) != 1) continue;  // gcd4 w/o eta10
                for (long long e8 : {a8, -a8}) {
                    long long n = e1 * e6 * e8 + T2;  // = -eta9*eta10
                    if (n == 0) continue;
                    const __int128 h1base = (__int128)e1 * e4 * e4 * e5 * e6 * e6;
                    const __int128 h3base = (__int128)e1 * e2 * e2 * e3 * e8 * e8;
                    for (std::uint64_t du : divisors((std::uint64_t)std::abs(n))) {
                        long long d = (long long)du;
                        if (h1base * d > B) continue;  // height1
                        for (long long e9 : {d, -d}) {
                            long long e10 = -(n / e9);
                            if (h3base * std::abs(e10) > B) continue;  // height3
                            TorsorTuple t{e1, e2, e3, e4, e5, e6, e7, e8, e9, e10};
                            if (!check_coprimality(t).empty()) continue;
                            sink(t);
                        }
                    }
                }
            }
        }
    }
}

bool monomials_pairwise_coprime(const TorsorTuple& t) {
    long long a = t.e3 * t.e5 * t.e7 * t.e7;
    long long b = t.e1 * t.e6 * std::abs(t.e8);
    long long c = std::abs(t.e9) * std::abs(t.e10);
    return std::gcd(a, b) == 1 && std::gcd(a, c) == 1 && std::gcd(b, c) == 1;
}

}  // namespace

CountResult count_torsor(long long B, unsigned threads) {
    if (B < 1) throw std::domain_error("count_torsor: B must be >= 1");
    auto t0 = std::chrono::steady_clock::now();
    auto outer = outer_tuples(B);
    long long count = parallel_reduce<long long>(
        outer.size(), threads, 0,
        [&](std::uint64_t b, std::uint64_t e) {
            long long c = 0;
            for (std::uint64_t i = b; i < e; ++i)
                enumerate_torsor(B, outer[i], [&](const TorsorTuple&) { ++c; });
            return c;
        },
        [](long long& acc, const long long& v) { acc += v; });
    return {B, count, "torsor", seconds_since(t0)};
}

std::vector<long long> torsor_height_histogram(long long Bmax, unsigned threads) {
    auto outer = outer_tuples(Bmax);
    using Hist = std::vector<long long>;
    return parallel_reduce<Hist>(
        outer.size(), threads, Hist(Bmax + 1, 0),
        [&](std::uint64_t b, std::uint64_t e) {
            Hist h(Bmax + 1, 0);
            for (std::uint64_t i = b; i < e; ++i)
                enumerate_torsor(Bmax, outer[i],
                                 [&](const TorsorTuple& t) { ++h[tuple_height(t)]; });
            return h;
        },
        [](Hist& acc, const Hist& v) {
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
        });
}

std::vector<TorsorTuple> audit_tuples(long long B, unsigned threads) {
    if (B > 1000) throw BudgetError("audit_tuples: audit mode is for B <= 1000");
    (void)threads;
    std::vector<TorsorTuple> ts;
    for (const auto& o : outer_tuples(B))
        enumerate_torsor(B, o, [&](const TorsorTuple& t) {
            if (!monomials_pairwise_coprime(t))
                throw InvariantError("audit_tuples: torsor monomials not pairwise coprime");
            ts.push_back(t);
        });
    std::sort(ts.begin(), ts.end());
    if (std::adjacent_find(ts.begin(), ts.end()) != ts.end())
        throw InvariantError("audit_tuples: duplicate tuple");
    return ts;
}

TorsorDiagnostics diagnostics_subsets(long long B, double A, unsigned threads) {
    if (B < 3) throw std::domain_error("diagnostics_subsets: B must be >= 3");
    (void)threads;
    TorsorDiagnostics d;
    d.B = B;
    d.A = A;
    const double L = std::pow(std::log((double)B), A);
    for (const auto& o : outer_tuples(B))
        enumerate_torsor(B, o, [&](const TorsorTuple& t) {
            ++d.total;
            if (std::abs(t.e9) == std::abs(t.e10)) ++d.n0;
            if (t.e10 > 0 && t.e10 <= std::abs(t.e9) && (double)t.e6 >= L &&
                (double)std::abs(t.e8) >= L)
                ++d.n_A;
            auto v = t.as_array();
            for (int i = 0; i < 8; ++i)
                if ((double)std::abs(v[i]) <= L) ++d.small[i];
        });
    return d;
}

std::string to_csv_row(const TorsorTuple& t) {
    std::string s;
    auto v = t.as_array();
    for (int i = 0; i < 10; ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace maninlab
