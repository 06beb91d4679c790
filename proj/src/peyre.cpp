#include "maninlab/peyre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "maninlab/parallel.hpp"
#include "maninlab/primes.hpp"
#include "maninlab/quadrature.hpp"
#include "maninlab/rng.hpp"

namespace maninlab {

Rat alpha_weyl() {
    // #W(A_n) = (n+1)!; two A2 singularities and one A1
    long wA2 = 6, wA1 = 2;
    return rat(1, 120) * rat(1, wA2 * wA2 * wA1);
}

PolytopeH peyre_polytope() {
    PolytopeH P;
    P.dim = 6;
    auto row = [](std::initializer_list<long> cs) {
        std::vector<Rat> r;
        for (long c : cs) r.push_back(Rat(c));
        return r;
    };
    // coordinates (t1, t2, t3, t4, t5, t10)
    P.add_constraint(row({3, -2, -1, 4, 2, -3}), Rat(1));
    P.add_constraint(row({0, 1, 2, 1, 2, 0}), Rat(1));
    P.add_constraint(row({1, 2, 1, 0, 0, 1}), Rat(1));
    P.add_constraint(row({0, 2, 1, 2, 1, 6}), Rat(2));
    P.add_nonnegativity();
    return P;
}

Rat alpha_polytope() { return polytope_volume(peyre_polytope()) / 3; }

Rat omega_p(std::uint64_t p) {
    if (!Sieve::instance().is_prime(p)) throw std::domain_error("omega_p: p must be prime");
    BigInt pp((unsigned long)p);
    return rat(pp * pp + 7 * pp + 1, pp * pp);
}

long long count_solutions_padic(std::uint64_t p, unsigned n) {
    if (!Sieve::instance().is_prime(p)) throw std::domain_error("padic: p must be prime");
    if (n < 1) throw std::domain_error("padic: n must be >= 1");
    double budget = std::pow((double)p, 4.0 * n);
    if (budget > 1e9) throw BudgetError("padic: p^(4n) exceeds the 1e9 scan budget");
    std::uint64_t m = 1;
    for (unsigned i = 0; i < n; ++i) m *= p;

    // #{(x0,x2): x0*(x1*x2) = -c mod m} = sum over x2 of g = gcd(x1*x2, m)
    // whenever g | c, so the scan is O(m^3) instead of O(m^4)
    std::vector<std::uint64_t> gcd_m(m);
    for (std::uint64_t r = 0; r < m; ++r) gcd_m[r] = gcd_u64(r, m);
    long long total = 0;
    for (std::uint64_t x1 = 0; x1 < m; ++x1) {
        for (std::uint64_t x3 = 0; x3 < m; ++x3) {
            std::uint64_t c = (std::uint64_t)((unsigned __int128)x3 * x3 % m *
                                              ((x1 + x3) % m) % m);
            std::uint64_t need = (m - c) % m;
            long long cnt = 0;
            for (std::uint64_t x2 = 0; x2 < m; ++x2) {
                std::uint64_t g = gcd_m[(std::uint64_t)((unsigned __int128)x1 * x2 % m)];
                if (need % g == 0) cnt += (long long)g;
            }
            total += cnt;
        }
    }
    return total;
}

double padic_density(std::uint64_t p, unsigned n) {
    return (double)count_solutions_padic(p, n) / std::pow((double)p, 3.0 * n);
}

double h_eval(double t8, double t6, double t7) {
    return std::max(std::max(t6 * t6 * std::fabs(t7 * t7 + t6 * t8), t7),
                    std::max(std::fabs(t8), t6 * t7 * std::fabs(t8)));
}

double t8_section_length(double t6, double t7, double t, double t8_min) {
    if (t6 <= 0 || t7 <= 0 || t7 > 1) return 0.0;
    double m = std::min(1.0, 1.0 / (t6 * t7));
    double lo = std::max(-m, (-1.0 / (t6 * t6) - t7 * t7) / t6);
    double hi = std::min(m, (1.0 / (t6 * t6) - t7 * t7) / t6);
    if (hi <= lo) return 0.0;
    // up to two interval subtractions, both closed form
    struct Seg {
        double a, b;
    };
    Seg segs[4];
    int nseg = 1;
    segs[0] = {lo, hi};
    auto remove = [&](double a, double b) {
        Seg nw[4];
        int k = 0;
        for (int i = 0; i < nseg; ++i) {
            if (b <= segs[i].a || a >= segs[i].b) {
                nw[k++] = segs[i];
                continue;
            }
            if (a > segs[i].a) nw[k++] = {segs[i].a, a};
            if (b < segs[i].b) nw[k++] = {b, segs[i].b};
        }
        std::copy(nw, nw + k, segs);
        nseg = k;
    };
    if (t > 0) remove((-t - t7 * t7) / t6, (t - t7 * t7) / t6);  // |t6 t8 + t7^2| >= t
    if (t8_min > 0) remove(-t8_min, t8_min);
    double len = 0.0;
    for (int i = 0; i < nseg; ++i) len += segs[i].b - segs[i].a;
    return len;
}

namespace {

constexpr double kT0 = 1000.0;  // analytic t6 tail: int_{T0}^inf 2/t^3 = 1/T0^2

double outer_2d(double t, double tol) {
    double cap = t > 0 ? std::min(kT0, 1.0 / std::sqrt(t)) : kT0;
    auto G = [&](double t7) {
        double acc = 0.0;
        double cuts[] = {0.0, std::min(1.0, cap), std::min(4.0, cap), cap};
        for (int i = 0; i + 1 < 4; ++i)
            if (cuts[i + 1] > cuts[i])
                acc += adaptive_simpson(
                    [&](double t6) { return t8_section_length(t6, t7, t); }, cuts[i],
                    cuts[i + 1], tol / 8.0);
        return acc;
    };
    return adaptive_simpson(G, 0.0, 1.0, tol);
}

}  // namespace

Interval omega_infty_method_a(double tolerance) {
    if (tolerance <= 0) throw std::domain_error("omega_infty: tolerance > 0 required");
    double inner = outer_2d(0.0, tolerance / 64.0);
    double tail = 1.0 / (kT0 * kT0);
    double slack = tolerance;
    return Interval(12.0 * (inner - slack), 12.0 * (inner + tail + slack));
}

namespace {

// t6-section measure at fixed (t7,t8): {t6 > 0 : |t8 t6^3 + t7^2 t6^2| <= 1,
// t6 <= 1/(t7 |t8|)}; the cubic band is resolved by root isolation
double t6_section_length(double t7, double t8) {
    if (t7 <= 0 || t7 > 1 || t8 == 0.0 || std::fabs(t8) > 1) return 0.0;
    double cap = 1.0 / (t7 * std::fabs(t8));
    std::vector<double> pts{0.0, cap};
    for (double Y : {1.0, -1.0}) {
        std::vector<double> poly{-Y, 0.0, t7 * t7, t8};
        for (double r : poly_real_roots(poly))
            if (r > 0 && r < cap) pts.push_back(r);
    }
    std::sort(pts.begin(), pts.end());
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double mid = 0.5 * (pts[i] + pts[i + 1]);
        if (std::fabs(t8 * mid * mid * mid + t7 * t7 * mid * mid) <= 1.0)
            len += pts[i + 1] - pts[i];
    }
    return len;
}

}  // namespace

Interval omega_infty_method_b(std::uint64_t samples) {
    if (samples < 1000) throw std::domain_error("omega_infty_method_b: too few samples");
    // 2D Halton over (t7, s) with t8 = s^3; the cube substitution bounds the
    // integrand (the section measure is <= 4 |t8|^{-1/3} by the elementary
    // measure bound, so 3 s^2 * section <= 12 |s|)
    constexpr unsigned kStreams = 16;
    std::vector<double> stream_mean(kStreams, 0.0);
    for (unsigned st = 0; st < kStreams; ++st) {
        double acc = 0.0;
        std::uint64_t n = samples / kStreams;
        for (std::uint64_t i = 0; i < n; ++i) {
            std::uint64_t idx = i * kStreams + st + 1;
            double t7 = halton(idx, 2);
            double s = 2.0 * halton(idx, 3) - 1.0;
            double t8 = s * s * s;
            acc += 3.0 * s * s * t6_section_length(t7, t8) * 2.0;  // ds over [-1,1]
        }
        stream_mean[st] = acc / (double)n;
    }
    double mean = 0.0;
    for (double v : stream_mean) mean += v;
    mean /= kStreams;
    double var = 0.0;
    for (double v : stream_mean) var += (v - mean) * (v - mean);
    double spread = 3.0 * std::sqrt(var / (kStreams * (kStreams - 1.0)));
    return Interval(12.0 * (mean - spread), 12.0 * (mean + spread));
}

Interval omega_infty(double tolerance) {
    Interval a = omega_infty_method_a(tolerance);
    Interval b = omega_infty_method_b(200000);
    if (!a.intersects(b))
        throw InvariantError("omega_infty: methods A and B disagree");
    return a;
}

// -----------------------------------------------------------------------
// Euler product with certified tail
// -----------------------------------------------------------------------

namespace {

// log[(1-1/p)^7 (1+7/p+1/p^2)] = -27/p^2 + r(p) with 0 <= r(p) <= 105/p^3
double euler_log_factor(double p) {
    return 7.0 * std::log1p(-1.0 / p) + std::log(1.0 + 7.0 / p + 1.0 / (p * p));
}

constexpr double kR3 = 105.0;  // |log factor + 27/p^2| <= kR3/p^3, all p >= 2

}  // namespace

Interval euler_product(std::uint64_t pmax) {
    if (pmax < 2) throw std::domain_error("euler_product: pmax >= 2 required");
    const auto& primes = Sieve::instance().primes();
    const std::uint64_t K = Sieve::instance().spf_limit();  // exact 1/p^2 sums reach K
    if (pmax > K) throw BudgetError("euler_product: pmax beyond sieve");

    long double logpart = 0.0L;
    long double s2 = 0.0L;  // sum_{pmax < p <= K} 1/p^2
    std::size_t nfac = 0;
    for (std::uint32_t p : primes) {
        if (p <= pmax) {
            logpart += euler_log_factor((double)p);
            ++nfac;
        } else {
            s2 += 1.0L / ((long double)p * p);
        }
    }
    // tail = sum_{p > pmax} log factor
    //      = -27 s2 + sum_{pmax<p<=K} r(p) + sum_{p>K} log factor
    // with 0 <= sum r(p) <= kR3 * sum_{n>pmax} n^-3 <= kR3/(2 pmax^2)
    // and  -27 sum_{p>K} 1/p^2 <= sum_{p>K} log factor <= 0,
    //      sum_{p>K} 1/p^2 <= sum_{odd n>K} 1/n^2 <= 1/(2K) + 1/K^2.
    long double r_hi = kR3 / (2.0L * (long double)pmax * pmax);
    long double beyond = 27.0L * (0.5L / (long double)K + 1.0L / ((long double)K * K));
    long double slack = 1e-17L * (long double)(nfac + primes.size()) * 8.0L;
    long double t_lo = -27.0L * s2 - beyond - slack;
    long double t_hi = -27.0L * s2 + r_hi + slack;
    return Interval((double)std::exp(logpart + t_lo), (double)std::exp(logpart + t_hi));
}

PeyreBreakdown c_vh(double tolerance, std::uint64_t pmax) {
    PeyreBreakdown out;
    out.alpha = alpha_polytope();
    if (out.alpha != alpha_weyl())
        throw InvariantError("c_vh: polytope alpha != Weyl alpha");
    out.beta = Rat(1);
    out.omega_inf = omega_infty(tolerance);
    out.euler = euler_product(pmax);
    out.pmax = pmax;
    out.c = interval_of(out.alpha) * interval_of(out.beta) * out.omega_inf * out.euler;
    return out;
}

JacobianReport jacobian_crosscheck(std::uint64_t samples, std::uint64_t seed,
                                   unsigned threads) {
    if (samples < 10000) throw std::domain_error("jacobian_crosscheck: samples >= 1e4");
    SplitRng rng{seed, 0x6a63ULL};
    struct Acc {
        double sum = 0.0, sumsq = 0.0;
    };
    Acc acc = parallel_reduce<Acc>(
        samples, threads, Acc{},
        [&](std::uint64_t b, std::uint64_t e) {
            Acc a;
            for (std::uint64_t i = b; i < e; ++i) {
                double u = rng.uniform(3 * i);
                double v = rng.uniform(3 * i + 1);
                double x3 = 2.0 * rng.uniform(3 * i + 2) - 1.0;
                if (u <= 0.0 || v <= 0.0) continue;
                double x1 = u * u * u * u;
                double x2 = v * v * v * v;
                double lhs = x3 * x3 * std::fabs(x1 + x3);
                double w = 0.0;
                if (lhs > 0.0 && lhs <= x1 * x2) w = 16.0 / (u * v);
                a.sum += w;
                a.sumsq += w * w;
            }
            return a;
        },
        [](Acc& x, const Acc& y) {
            x.sum += y.sum;
            x.sumsq += y.sumsq;
        });
    // estimate = 2 * box_volume * mean(w), box = (0,1]^2 x [-1,1]
    double mean = acc.sum / (double)samples;
    double var = std::max(0.0, acc.sumsq / (double)samples - mean * mean);
    double est = 2.0 * 2.0 * mean;
    double se = 4.0 * std::sqrt(var / (double)samples);
    JacobianReport r;
    r.estimate = est;
    r.std_error = se;
    r.reference = omega_infty_method_a(1e-6);
    r.samples = samples;
    r.seed = seed;
    return r;
}

}  // namespace maninlab
