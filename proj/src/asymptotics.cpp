#include "maninlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "maninlab/arith.hpp"
#include "maninlab/primes.hpp"
#include "maninlab/quadrature.hpp"
#include "maninlab/surface.hpp"

namespace maninlab {

double eta_power(const EtaPrime& e, const std::array<Rat, 6>& r) {
    std::array<std::uint64_t, 6> v{e.e1pp, e.e2, e.e3, e.e4, e.e5, e.e10};
    double out = 1.0;
    for (int i = 0; i < 6; ++i) out *= std::pow((double)v[i], to_double(r[i]));
    return out;
}

MainTermGeometry geometry(const EtaPrime& e, long long B, std::uint64_t k1,
                          std::uint64_t l1, std::uint64_t k6, double A) {
    if (B < 3) throw std::domain_error("geometry: B >= 3 required");
    MainTermGeometry g;
    g.B = B;
    g.k1 = k1;
    g.l1 = l1;
    g.k6 = k6;
    g.A = A;
    auto r6 = [](long a1, long a2, long a3, long a4, long a5, long a10, long den) {
        return std::array<Rat, 6>{rat(a1, den), rat(a2, den), rat(a3, den),
                                  rat(a4, den), rat(a5, den), rat(a10, den)};
    };
    double Bd = (double)B;
    g.Y8 = std::sqrt(Bd) / eta_power(e, r6(1, 2, 1, 0, 0, 1, 2));
    g.Y6 = std::pow(Bd, 1.0 / 6.0) / eta_power(e, r6(3, -2, -1, 4, 2, -3, 6));
    g.Y7 = std::pow(Bd, 1.0 / 3.0) / eta_power(e, r6(0, 1, 2, 1, 2, 0, 3));
    double k1l1 = std::sqrt((double)k1 * (double)l1);
    g.Y8p = g.Y8 / k1l1;
    g.Y6p = g.Y6 / (k1l1 * (double)k6);
    g.kappa = (double)e.e10 * (double)e.e10 / ((double)e.e3 * (double)e.e5 * g.Y7 * g.Y7);
    g.script_L = k1l1 * std::pow(std::log(Bd), A);
    return g;
}

double g1(double t6, double t7, double t, const MainTermGeometry& geom) {
    return t8_section_length(t6, t7, t, geom.script_L / geom.Y8);
}

double g2(double t7, double t, const MainTermGeometry& geom, double tol) {
    double lo = geom.script_L / geom.Y6;
    double cap = t > 0 ? 1.0 / std::sqrt(t) : 1e6;
    if (cap <= lo) return 0.0;
    double acc = 0.0;
    double cuts[] = {lo, std::max(lo, std::min(1.0, cap)), std::max(lo, std::min(8.0, cap)),
                     cap};
    for (int i = 0; i + 1 < 4; ++i)
        if (cuts[i + 1] > cuts[i])
            acc += adaptive_simpson([&](double t6) { return g1(t6, t7, t, geom); }, cuts[i],
                                    cuts[i + 1], tol / 4.0);
    // for t = 0 the integrand tail beyond the cut is < int 2/t6^3 = 1/cap^2
    return acc;
}

double g3(double t7, double t, double tol) {
    if (t7 <= 0 || t7 > 1) return 0.0;
    double cap = t > 0 ? 1.0 / std::sqrt(t) : 1e6;
    double acc = 0.0;
    double cuts[] = {0.0, std::min(1.0, cap), std::min(8.0, cap), cap};
    for (int i = 0; i + 1 < 4; ++i)
        if (cuts[i + 1] > cuts[i])
            acc += adaptive_simpson([&](double t6) { return t8_section_length(t6, t7, t); },
                                    cuts[i], cuts[i + 1], tol / 4.0);
    return acc;
}

double g4(double t, double tol) {
    return adaptive_simpson([&](double t7) { return g3(t7, t, tol / 8.0); }, 0.0, 1.0, tol);
}

namespace {

std::vector<std::uint64_t> support_of(std::initializer_list<std::uint64_t> vs) {
    return prime_support(vs);
}

}  // namespace

Rat theta1(const EtaPrime& e) {
    auto s235 = support_of({e.e2, e.e3, e.e5});
    auto sall = support_of({e.e2, e.e3, e.e4, e.e5, e.e10});
    return phi_star_support(s235) * phi_star_support(sall) * phi_plus_support(sall);
}

Rat theta2(const EtaPrime& e, std::uint64_t eta7) {
    BigInt g = gcd(BigInt((unsigned long)eta7), BigInt((unsigned long)e.e3) * (unsigned long)e.e5);
    std::uint64_t gv = (std::uint64_t)g.get_ui();
    Rat s = phi_star(eta7) / phi_star(gv);
    return s * s * phi_plus(eta7) / phi_plus(gv);
}

Rat Theta(const EtaPrime& e) {
    BigInt g6 = gcd(BigInt((unsigned long)e.e2) * (unsigned long)e.e3,
                    BigInt((unsigned long)e.e4) * (unsigned long)e.e5);
    BigInt g7 = gcd(BigInt((unsigned long)e.e10), BigInt((unsigned long)e.e3) *
                                                      (unsigned long)e.e4 * (unsigned long)e.e5);
    if (g6 != 1 || g7 != 1) return Rat(0);
    auto sall = support_of({e.e2, e.e3, e.e4, e.e5, e.e10});
    return theta1(e) * phi_star_support(support_of({e.e2, e.e4, e.e10})) *
           phi_times_support(sall);
}

Rat local_factor(std::uint64_t p) {
    if (!Sieve::instance().is_prime(p)) throw std::domain_error("local_factor: p prime");
    // Theta(1, p^k2, ..., p^k10) depends only on which exponents are
    // positive, and sum_{k>=1} p^{-k} = 1/(p-1), so the infinite 5-fold sum
    // collapses to 32 patterns
    Rat total(0);
    Rat w1 = rat(1, (long)p - 1);
    for (unsigned mask = 0; mask < 32; ++mask) {
        bool a2 = mask & 1, a3 = mask & 2, a4 = mask & 4, a5 = mask & 8, a10 = mask & 16;
        EtaPrime e{1, a2 ? p : 1, a3 ? p : 1, a4 ? p : 1, a5 ? p : 1, a10 ? p : 1};
        Rat th = Theta(e);  // zero on gcd6/gcd7-violating patterns
        if (th == 0) continue;
        Rat w(1);
        for (bool a : {a2, a3, a4, a5, a10})
            if (a) w *= w1;
        total += th * w;
    }
    return total;
}

Rat local_factor_rhs(std::uint64_t p) {
    return phi_plus(p) * phi_times(p) * (Rat(1) - rat(1, (long)p)) * omega_p(p);
}

bool sum2_check(std::uint64_t p) {
    Rat one_m = Rat(1) - rat(1, (long)p);
    Rat lhs(1);
    for (int i = 0; i < 5; ++i) lhs *= one_m;
    lhs *= local_factor(p);
    Rat pm7(1);
    for (int i = 0; i < 7; ++i) pm7 *= one_m;
    BigInt pp((unsigned long)p);
    Rat inv_1mp2 = rat(pp * pp, pp * pp - 1);
    Rat rhs = inv_1mp2 * phi_times(p) * pm7 * omega_p(p);
    return lhs == rhs;
}

int mobius6(const EtaPrime& e) {
    int r = 1;
    for (std::uint64_t v : {e.e1pp, e.e2, e.e3, e.e4, e.e5, e.e10}) {
        int m = mobius(v);
        if (m == 0) return 0;
        r *= m;
    }
    return r;
}

bool vprime_member(const EtaPrime& e, long long B) {
    if (B < 3) throw std::domain_error("vprime_member: B >= 3 required");
    BigInt e1((unsigned long)e.e1pp), e2((unsigned long)e.e2), e3((unsigned long)e.e3);
    BigInt e4((unsigned long)e.e4), e5((unsigned long)e.e5), e10((unsigned long)e.e10);
    BigInt BB((long)B);
    if (e2 * e3 * e3 * e4 * e5 * e5 > BB) return false;                    // Y7 >= 1
    if (e1 * e2 * e2 * e3 * e10 > BB) return false;                        // Y8 >= 1
    if (e1 * e1 * e1 * e4 * e4 * e4 * e4 * e5 * e5 > BB * e2 * e2 * e3 * e10 * e10 * e10)
        return false;                                                      // Y6 >= 1
    BigInt e10_6 = e10 * e10 * e10 * e10 * e10 * e10;
    if (BB * BB < e2 * e2 * e3 * e4 * e4 * e5 * e10_6) return false;       // e3 e5 Y7^2 >= e10^2
    return true;
}

Sum1Row sum1_for(long long B) {
    if (B < 1) throw std::domain_error("sum1_for: B >= 1 required");
    if (B > 100000) throw BudgetError("sum1_for: B beyond the 6-fold sum budget");
    // Theta is independent of eta1'', so sum the inner eta1''-range as an
    // exact harmonic number H(m); buckets keyed by m keep the big-lcm
    // additions down to one per distinct m
    std::map<long long, Rat> buckets;
    BigInt BB((long)B);
    for (long long a2 = 1; a2 <= B; ++a2)
        for (long long a3 = 1; a2 * a3 * a3 <= B; ++a3)
            for (long long a4 = 1; a2 * a3 * a3 * a4 <= B; ++a4) {
                if (std::gcd(a2 * a3, a4) != 1) continue;  // gcd6
                for (long long a5 = 1; a2 * a3 * a3 * a4 * a5 * a5 <= B; ++a5) {
                    if (std::gcd(a2 * a3, a5) != 1) continue;
                    for (long long a10 = 1; a2 * a2 * a3 * a10 <= B; ++a10) {
                        if (std::gcd(a10, a3 * a4 * a5) != 1) continue;  // gcd7
                        EtaPrime e{1, (std::uint64_t)a2, (std::uint64_t)a3,
                                   (std::uint64_t)a4, (std::uint64_t)a5, (std::uint64_t)a10};
                        // kappa <= 1: B^2 >= e2^2 e3 e4^2 e5 e10^6
                        BigInt k = BigInt((long)a2) * (long)a2 * (long)a3 * (long)a4 * (long)a4 * (long)a5;
                        BigInt t10 = BigInt((long)a10);
                        if (BB * BB < k * t10 * t10 * t10 * t10 * t10 * t10) continue;
                        // eta1'' range from Y8 >= 1 and Y6 >= 1
                        BigInt m8 = BB / (BigInt((long)a2) * (long)a2 * (long)a3 * (long)a10);
                        BigInt y6rhs = BB * (long)a2 * (long)a2 * (long)a3 * t10 * t10 * t10 /
                                       (BigInt((long)a4) * (long)a4 * (long)a4 * (long)a4 * (long)a5 * (long)a5);
                        BigInt m6;
                        mpz_root(m6.get_mpz_t(), y6rhs.get_mpz_t(), 3);
                        BigInt m = m8 < m6 ? m8 : m6;
                        if (m < 1) continue;
                        Rat th = Theta(e);
                        Rat denom = rat(BigInt((long)a2) * (long)a3 * (long)a4 * (long)a5 * (long)a10, BigInt(1));
                        buckets[(long long)m.get_si()] += th / denom;
                    }
                }
            }
    // exact harmonic numbers, ascending so each H(m) is built incrementally
    Rat lhs(0), H(0);
    long long hn = 0;
    for (auto& [m, coeff] : buckets) {
        while (hn < m) {
            ++hn;
            H += rat(1, hn);
        }
        lhs += coeff * H;
    }
    Sum1Row row;
    row.B = B;
    row.lhs = lhs;
    double lg = std::log((double)B);
    row.per_log6 = to_double(lhs) / std::pow(lg, 6.0);
    row.target = to_double(alpha_weyl() * 3) * euler_product(100000).mid();
    return row;
}

std::vector<Sum1Row> sum1_experiment(const std::vector<long long>& Bs) {
    std::vector<Sum1Row> rows;
    for (long long B : Bs) rows.push_back(sum1_for(B));
    return rows;
}

bool constant_assembly_check(double tolerance, double xi_perturb) {
    double alpha = to_double(alpha_weyl());
    double omega = omega_infty_method_a(1e-6).mid();
    double euler = euler_product(100000).mid();
    double zeta2 = M_PI * M_PI / 6.0;
    double xi = xi_constant(100000).mid();

    double direct = alpha * omega * euler;
    // assembled route: zeta(2)^{-1} Xi (omega/3) * [3 alpha] * [zeta(2) Xi^{-1} euler]
    double assembled = (1.0 / zeta2) * (xi * xi_perturb) * (omega / 3.0) * (3.0 * alpha) *
                       (zeta2 * euler / xi);
    return std::fabs(direct - assembled) <= tolerance * std::fabs(direct);
}

std::vector<ManinRow> empirical_manin(const std::vector<long long>& Bs, double tolerance,
                                      std::uint64_t pmax, unsigned threads) {
    PeyreBreakdown pb = c_vh(tolerance, pmax);
    std::vector<ManinRow> rows;
    for (long long B : Bs) {
        CountResult r = count_direct(B, threads);
        double lg = std::log((double)B);
        rows.push_back({B, r.count, (double)r.count / ((double)B * std::pow(lg, 6.0)),
                        pb.c.lo, pb.c.hi});
    }
    return rows;
}

}  // namespace maninlab
