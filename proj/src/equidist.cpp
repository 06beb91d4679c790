#include "maninlab/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "maninlab/arith.hpp"
#include "maninlab/primes.hpp"

namespace maninlab {

// -----------------------------------------------------------------------
// Interval1
// -----------------------------------------------------------------------

std::optional<std::pair<BigInt, BigInt>> Interval1::integer_range() const {
    BigInt first = rat_ceil(lo);
    if (lo_open && is_integer(lo)) first += 1;
    BigInt last = rat_floor(hi);
    if (hi_open && is_integer(hi)) last -= 1;
    if (first > last) return std::nullopt;
    return std::make_pair(first, last);
}

long long Interval1::integer_count() const {
    auto r = integer_range();
    if (!r) return 0;
    BigInt n = r->second - r->first + 1;
    return (long long)n.get_si();
}

Interval1 Interval1::scaled_down(std::uint64_t m) const {
    Rat mm((unsigned long)m);
    return Interval1{lo / mm, hi / mm, lo_open, hi_open};
}

Rat Interval1::max_abs() const {
    Rat a = abs(lo), b = abs(hi);
    return a > b ? a : b;
}

bool Interval1::contains(const Rat& t) const {
    if (lo_open ? !(t > lo) : !(t >= lo)) return false;
    if (hi_open ? !(t < hi) : !(t <= hi)) return false;
    return true;
}

Interval1 geometric_cell(const Rat& U, const Rat& zeta) {
    if (U > 0) return Interval1{U, zeta * U, true, false};
    if (U < 0) return Interval1{zeta * U, U, false, true};
    throw std::domain_error("geometric_cell: U must be nonzero");
}

GeomGrid::GeomGrid(const Rat& d) : delta(d), zeta(d + 1) {
    if (!(d > 0) || d > 1) throw std::domain_error("GeomGrid: delta in (0,1] required");
}

std::vector<Interval1> GeomGrid::axis_cells(const Rat& bound, bool both_signs) const {
    std::vector<Interval1> cells;
    Rat U = 1 / zeta;  // n = -1
    while (U <= bound) {
        cells.push_back(geometric_cell(U, zeta));
        if (both_signs) cells.push_back(geometric_cell(-U, zeta));
        U *= zeta;
    }
    return cells;
}

// -----------------------------------------------------------------------
// box counts
// -----------------------------------------------------------------------

namespace {

// #{n in [first,last] : n = r (mod q)}
long long count_in_class(const BigInt& first, const BigInt& last, std::uint64_t r,
                         std::uint64_t q) {
    if (first > last) return 0;
    BigInt qq((unsigned long)q), rr((unsigned long)r);
    // smallest n >= first with n = r mod q
    BigInt n = first + ((rr - first) % qq + qq) % qq;
    if (n > last) return 0;
    BigInt cnt = (last - n) / qq + 1;
    return (long long)cnt.get_si();
}

long long count_coprime(const Interval1& iv, std::uint64_t q) {
    auto r = iv.integer_range();
    if (!r) return 0;
    if (q == 1) return (long long)BigInt(r->second - r->first + 1).get_si();
    long long total = 0;
    for (std::uint64_t c = 0; c < q; ++c)
        if (gcd_u64(c, q) == 1) total += count_in_class(r->first, r->second, c, q);
    return total;
}

std::uint64_t mod_of(const BigInt& v, std::uint64_t q) {
    BigInt m = ((v % (unsigned long)q) + (unsigned long)q) % (unsigned long)q;
    return m.get_ui();
}

}  // namespace

long long N_count(const Box3& box, std::uint64_t q, std::int64_t a) {
    if (q < 1) throw std::domain_error("N_count: q >= 1 required");
    std::uint64_t am = mod_of(BigInt((long)a), q);
    if (q > 1 && gcd_u64(am, q) != 1)
        throw std::domain_error("N_count: gcd(a,q) must be 1");
    auto ri = box.I.integer_range(), rj = box.J.integer_range(), rk = box.K.integer_range();
    if (!ri || !rj || !rk) return 0;
    if (q == 1) {
        return box.I.integer_count() * box.J.integer_count() * box.K.integer_count();
    }
    long long total = 0;
    for (BigInt u = ri->first; u <= ri->second; ++u) {
        std::uint64_t um = mod_of(u, q);
        for (BigInt v = rj->first; v <= rj->second; ++v) {
            std::uint64_t c = (std::uint64_t)((unsigned __int128)um * mod_of(v, q) % q);
            // solve c*w = a (mod q): since gcd(a,q)=1, needs gcd(c,q)=1
            if (gcd_u64(c, q) != 1) continue;
            std::uint64_t w0 = (std::uint64_t)((unsigned __int128)inv_mod(c, q) * am % q);
            total += count_in_class(rk->first, rk->second, w0, q);
        }
    }
    return total;
}

Rat N_star(const Box3& box, std::uint64_t q) {
    if (q < 1) throw std::domain_error("N_star: q >= 1 required");
    // gcd(uvw,q)=1 factors through the axes
    BigInt cnt = BigInt((long)count_coprime(box.I, q)) * (long)count_coprime(box.J, q) *
                 (long)count_coprime(box.K, q);
    return rat(cnt, BigInt((unsigned long)totient(q)));
}

long long N_b_count(const Box3& box, std::uint64_t q, std::int64_t a, std::uint64_t b) {
    if (b < 1) throw std::domain_error("N_b_count: b >= 1 required");
    auto ri = box.I.integer_range(), rj = box.J.integer_range(), rk = box.K.integer_range();
    if (!ri || !rj || !rk) return 0;
    std::uint64_t am = mod_of(BigInt((long)a), q);
    if (q > 1 && gcd_u64(am, q) != 1)
        throw std::domain_error("N_b_count: gcd(a,q) must be 1");
    long long total = 0;
    for (BigInt v = rj->first; v <= rj->second; ++v) {
        for (BigInt w = rk->first; w <= rk->second; ++w) {
            BigInt bw = BigInt((unsigned long)b) * w;
            BigInt gg = gcd(v, bw);
            if (abs(gg) != 1) continue;
            if (q == 1) {
                total += (long long)BigInt(ri->second - ri->first + 1).get_si();
                continue;
            }
            std::uint64_t c = (std::uint64_t)((unsigned __int128)mod_of(v, q) * mod_of(w, q) % q);
            if (gcd_u64(c, q) != 1) continue;
            std::uint64_t u0 = (std::uint64_t)((unsigned __int128)inv_mod(c, q) * am % q);
            total += count_in_class(ri->first, ri->second, u0, q);
        }
    }
    return total;
}

Rat N_b_star(const Box3& box, std::uint64_t q, std::uint64_t b) {
    auto ri = box.I.integer_range(), rj = box.J.integer_range(), rk = box.K.integer_range();
    if (!ri || !rj || !rk) return Rat(0);
    long long iu = count_coprime(box.I, q);
    BigInt pairs(0);
    for (BigInt v = rj->first; v <= rj->second; ++v) {
        if (q > 1 && gcd_u64(mod_of(v, q), q) != 1) continue;
        for (BigInt w = rk->first; w <= rk->second; ++w) {
            if (q > 1 && gcd_u64(mod_of(w, q), q) != 1) continue;
            if (abs(gcd(v, BigInt((unsigned long)b) * w)) != 1) continue;
            pairs += 1;
        }
    }
    return rat(BigInt((long)iu) * pairs, BigInt((unsigned long)totient(q)));
}

long long mobius_expand_Nb(const Box3& box, std::uint64_t q, std::int64_t a, std::uint64_t b) {
    std::uint64_t am = mod_of(BigInt((long)a), q);
    if (q > 1 && gcd_u64(am, q) != 1)
        throw std::domain_error("mobius_expand_Nb: gcd(a,q) must be 1");
    // terms vanish once J_{kl} or K_k holds no integer: k <= max|K|, kl <= max|J|
    std::uint64_t kmax = (std::uint64_t)rat_floor(box.K.max_abs()).get_ui();
    std::uint64_t jmax = (std::uint64_t)rat_floor(box.J.max_abs()).get_ui();
    long long total = 0;
    for (std::uint64_t k = 1; k <= kmax; ++k) {
        int mk = mobius(k);
        if (mk == 0 || gcd_u64(k, b) != 1) continue;
        for (std::uint64_t l : divisors(b)) {
            int ml = mobius(l);
            if (ml == 0) continue;
            if (k * l > jmax) continue;
            std::int64_t ashift = 1;
            if (q > 1) {
                if (gcd_u64(k * l % q, q) != 1) continue;
                std::uint64_t k2l =
                    (std::uint64_t)((unsigned __int128)(k % q) * (k % q) % q * (l % q) % q);
                ashift = (std::int64_t)((unsigned __int128)inv_mod(k2l, q) * am % q);
            }
            Box3 sub{box.I, box.J.scaled_down(k * l), box.K.scaled_down(k)};
            total += (long long)mk * ml * N_count(sub, q, ashift);
        }
    }
    return total;
}

double E_bound(double X, double q) {
    if (X <= 0 || q <= 0) throw std::domain_error("E_bound: X, q > 0 required");
    return std::sqrt(X) / std::pow(q, 1.0 / 150.0) * std::pow(X / (q * q), 17.0 / 150.0);
}

// -----------------------------------------------------------------------
// region S
// -----------------------------------------------------------------------

bool S_member(const RegionS& s, const Rat& x, const Rat& y, const Rat& z) {
    if (x < 0 || y < 0) throw std::domain_error("S_member: needs x, y >= 0");
    Rat az = abs(z);
    Rat inner = abs(x * y * z + s.T);
    return x * y * y * inner <= s.X1 &&  // (A)
           x * z * z <= s.X2 &&          // (B)
           x * y * az <= s.X &&          // (C)
           s.Z <= inner &&               // (D)
           s.L1 <= y &&                  // (E)
           s.L2 <= az;                   // (F)
}

namespace {

// exact integer fast path: when every region parameter is an integer that
// fits comfortably in 64 bits, membership reduces to __int128 arithmetic
struct IntRegion {
    long long X, X1, X2, T, Z, L1c, L2c;  // L's pre-ceiled
    bool usable = false;
};

IntRegion int_region(const RegionS& s) {
    IntRegion r;
    const Rat* vals[] = {&s.X, &s.X1, &s.X2, &s.T, &s.Z};
    for (const Rat* v : vals)
        if (!is_integer(*v) || abs(*v) > Rat((long)1e10)) return r;
    r.X = (long long)s.X.get_num().get_si();
    r.X1 = (long long)s.X1.get_num().get_si();
    r.X2 = (long long)s.X2.get_num().get_si();
    r.T = (long long)s.T.get_num().get_si();
    r.Z = (long long)s.Z.get_num().get_si();
    r.L1c = (long long)rat_ceil(s.L1).get_si();
    r.L2c = (long long)rat_ceil(s.L2).get_si();
    r.usable = true;
    return r;
}

// checked in the order (E)(F)(C)(B)(D)(A): once (C) holds, |uvw| <= X and
// every remaining product stays far inside __int128
bool int_member(const IntRegion& r, long long u, long long v, long long w) {
    long long aw = std::llabs(w);
    if (v < r.L1c || aw < r.L2c) return false;               // (E),(F)
    if ((__int128)u * v * aw > r.X) return false;            // (C)
    if ((__int128)u * aw * aw > r.X2) return false;          // (B)
    __int128 inner = (__int128)u * v * w + r.T;
    if (inner < 0) inner = -inner;
    if (inner < r.Z) return false;                           // (D)
    return (__int128)u * v * v * (long long)inner <= r.X1;   // (A)
}

struct ScanBounds {
    long long umax;
    long long vmin;
    long long wmin;
};

ScanBounds region_bounds(const RegionS& s, std::uint64_t q) {
    if (!(s.L1 > 0) || !(s.L2 > 0))
        throw std::domain_error("RegionS: L1, L2 must be positive");
    // u = 0 admits arbitrarily large (v,w) whenever Z <= T; only the
    // congruence kills those points, and at q = 1 it does not
    if (q == 1 && s.Z <= s.T)
        throw std::domain_error("D-count: region unbounded at q=1 (Z <= T)");
    ScanBounds b;
    b.vmin = std::max<long long>(1, (long long)rat_ceil(s.L1).get_si());
    b.wmin = std::max<long long>(1, (long long)rat_ceil(s.L2).get_si());
    Rat u1 = s.X / (Rat((long)b.vmin) * Rat((long)b.wmin));
    Rat u2 = s.X2 / (Rat((long)b.wmin) * Rat((long)b.wmin));
    b.umax = (long long)rat_floor(u1 < u2 ? u1 : u2).get_si();
    if (b.umax > 100'000'000LL) throw BudgetError("D-count: region too large to scan");
    return b;
}

// exact scan over the integer points of S; calls fn(u,v,w)
template <typename Fn>
void region_scan(const RegionS& s, std::uint64_t q, Fn&& fn) {
    ScanBounds bd = region_bounds(s, q);
    IntRegion ir = int_region(s);
    double cost = 0;
    for (long long u = 1; u <= bd.umax; ++u) {
        Rat uu((long)u);
        Rat w2cap = s.X2 / uu;                       // w^2 <= X2/u
        Rat wcap_c = s.X / (uu * Rat((long)bd.vmin));  // |w| <= X/(u vmin)
        long long wmax = (long long)std::sqrt(std::max(0.0, to_double(w2cap)));
        while (Rat((long)(wmax + 1)) * Rat((long)(wmax + 1)) <= w2cap) ++wmax;
        while (wmax > 0 && Rat((long)wmax) * Rat((long)wmax) > w2cap) --wmax;
        wmax = std::min(wmax, (long long)rat_floor(wcap_c).get_si());
        for (long long aw = bd.wmin; aw <= wmax; ++aw) {
            long long vmax = (long long)rat_floor(s.X / (uu * Rat((long)aw))).get_si();
            cost += 2.0 * std::max(0LL, vmax - bd.vmin + 1);
            if (cost > 1e8) throw BudgetError("D-count: scan exceeds the 1e8-point budget");
            for (long long w : {aw, -aw})
                for (long long v = bd.vmin; v <= vmax; ++v) {
                    bool in = ir.usable
                                  ? int_member(ir, u, v, w)
                                  : S_member(s, Rat((long)u), Rat((long)v), Rat((long)w));
                    if (in) fn(u, v, w);
                }
        }
    }
}

}  // namespace

long long D_count(const RegionS& s, std::uint64_t q, std::int64_t a) {
    std::uint64_t am = mod_of(BigInt((long)a), q);
    if (q > 1 && gcd_u64(am, q) != 1) throw std::domain_error("D_count: gcd(a,q) must be 1");
    long long total = 0;
    region_scan(s, q, [&](long long u, long long v, long long w) {
        if (q == 1) {
            ++total;
            return;
        }
        std::uint64_t m = (std::uint64_t)((((__int128)u * v % (long long)q) * w % (long long)q +
                                           (long long)q) %
                                          (long long)q);
        if (m == am) ++total;
    });
    return total;
}

Rat D_star(const RegionS& s, std::uint64_t q) {
    long long total = 0;
    region_scan(s, q, [&](long long u, long long v, long long w) {
        __int128 prod = (__int128)u * v * w;
        long long m = (long long)(((prod % (long long)q) + (long long)q) % (long long)q);
        if (gcd_u64((std::uint64_t)m, q) == 1) ++total;
    });
    return rat(BigInt((long)total), BigInt((unsigned long)totient(q)));
}

long long D_b_count(const RegionS& s, std::uint64_t q, std::int64_t a, std::uint64_t b) {
    std::uint64_t am = mod_of(BigInt((long)a), q);
    if (q > 1 && gcd_u64(am, q) != 1)
        throw std::domain_error("D_b_count: gcd(a,q) must be 1");
    long long total = 0;
    region_scan(s, q, [&](long long u, long long v, long long w) {
        if (std::gcd(v, (long long)b * std::abs(w)) != 1) return;
        std::uint64_t m = (std::uint64_t)((((__int128)u * v % (long long)q) * w % (long long)q +
                                           (long long)q) %
                                          (long long)q);
        if (q == 1 || m == am) ++total;
    });
    return total;
}

Rat D_b_star(const RegionS& s, std::uint64_t q, std::uint64_t b) {
    long long total = 0;
    region_scan(s, q, [&](long long u, long long v, long long w) {
        if (std::gcd(v, (long long)b * std::abs(w)) != 1) return;
        __int128 prod = (__int128)u * v * w;
        long long m = (long long)(((prod % (long long)q) + (long long)q) % (long long)q);
        if (gcd_u64((std::uint64_t)m, q) == 1) ++total;
    });
    return rat(BigInt((long)total), BigInt((unsigned long)totient(q)));
}

// -----------------------------------------------------------------------
// decomposition into geometric cells
// -----------------------------------------------------------------------

BoxDecomposition box_decompose(const RegionS& s, const GeomGrid& grid) {
    ScanBounds bd = region_bounds(s, 2);  // bounds ignore the congruence
    // v and w ranges implied by u >= 1
    long long vmax = (long long)rat_floor(s.X / Rat((long)bd.wmin)).get_si();
    Rat w2cap = s.X2;
    long long wmax = (long long)rat_floor(s.X / Rat((long)bd.vmin)).get_si();
    while (wmax > 0 && Rat((long)wmax) * Rat((long)wmax) > w2cap) --wmax;

    auto xcells = grid.axis_cells(Rat((long)std::max(1LL, bd.umax)), false);
    auto ycells = grid.axis_cells(Rat((long)std::max(1LL, vmax)), false);
    auto zcells = grid.axis_cells(Rat((long)std::max(1LL, wmax)), true);

    BoxDecomposition out;
    for (const auto& I : xcells)
        for (const auto& J : ycells)
            for (const auto& K : zcells) {
                auto ri = I.integer_range(), rj = J.integer_range(), rk = K.integer_range();
                if (!ri || !rj || !rk) continue;
                long long in_s = 0, out_s = 0;
                for (BigInt u = ri->first; u <= ri->second; ++u)
                    for (BigInt v = rj->first; v <= rj->second; ++v)
                        for (BigInt w = rk->first; w <= rk->second; ++w) {
                            if (S_member(s, Rat(u), Rat(v), Rat(w)))
                                ++in_s;
                            else
                                ++out_s;
                        }
                if (in_s > 0 && out_s == 0)
                    out.inside.push_back(Box3{I, J, K});
                else if (in_s > 0 && out_s > 0)
                    out.boundary.push_back(Box3{I, J, K});
            }
    return out;
}

// -----------------------------------------------------------------------
// experiment harness
// -----------------------------------------------------------------------

RegionS experiment_region(std::uint64_t X) {
    // Integer parameters; Z > T keeps the region bounded for every q.
    std::uint64_t rt = (std::uint64_t)std::sqrt((double)X);
    RegionS s;
    s.X = Rat((unsigned long)X);
    s.X1 = Rat((unsigned long)X) * Rat((unsigned long)(rt + 1));
    s.X2 = Rat((unsigned long)X);
    s.T = Rat((unsigned long)rt);
    s.Z = Rat((unsigned long)(2 * rt + 1));
    s.L1 = Rat(2);
    s.L2 = Rat(2);
    return s;
}

std::vector<EquidistDetailRow> experiment_detail(const RegionS& s, std::uint64_t q,
                                                 std::uint64_t b) {
    std::vector<EquidistDetailRow> rows;
    double X = to_double(s.X);
    Rat dstar = D_b_star(s, q, b);
    for (std::uint64_t a = 1; a <= q; ++a) {
        if (gcd_u64(a % q == 0 ? q : a % q, q) != 1) continue;
        long long n = D_b_count(s, q, (std::int64_t)a, b);
        rows.push_back({X, q, (std::int64_t)a, n, dstar,
                        std::fabs((double)n - to_double(dstar)), E_bound(X, (double)q)});
    }
    return rows;
}

std::vector<EquidistRow> experiment_equidist(const EquidistConfig& cfg) {
    std::vector<EquidistRow> rows;
    const double theta = 29.0 / 300.0;
    const double lambda = 46.0 / 75.0;
    for (std::uint64_t X : cfg.Xs) {
        RegionS s = experiment_region(X);
        for (std::uint64_t q : cfg.qs) {
            Rat dstar = D_b_star(s, q, cfg.b);
            double ds = to_double(dstar);
            double maxe = 0.0, sume = 0.0;
            long long na = 0;
            for (std::uint64_t a = 1; a <= q; ++a) {
                if (gcd_u64(a % q == 0 ? q : a % q, q) != 1) continue;
                long long n = D_b_count(s, q, (std::int64_t)a, cfg.b);
                double e = std::fabs((double)n - ds);
                maxe = std::max(maxe, e);
                sume += e;
                ++na;
            }
            double delta = cfg.delta > 0
                               ? cfg.delta
                               : std::pow((double)q, -1.0 / 600.0) *
                                     std::pow((double)q * q / (double)X, theta);
            double shape = std::pow(sigma_neg(lambda, cfg.b), 0.25) * std::sqrt((double)X) /
                           std::pow((double)q, 1.0 / 600.0) *
                           std::pow((double)X / ((double)q * q), 0.5 - theta);
            rows.push_back({(double)X, q, delta, cfg.b, maxe, na ? sume / na : 0.0,
                            E_bound((double)X, (double)q), shape});
        }
    }
    return rows;
}

}  // namespace maninlab
