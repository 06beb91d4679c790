#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maninlab/rat.hpp"

namespace maninlab {

// =========================================================================
// Restricted divisor counts in arithmetic progressions over boxes and over
// the seven-parameter region S, with the exact double Mobius inversion
// used to remove the gcd(v,bw)=1 condition. All lattice counts are exact;
// the analytic error bound E(X,q) and the exponents theta = 29/300,
// lambda = 46/75 are carried for empirical comparison only.
// =========================================================================

// Oriented cell on one axis: half-open, rational endpoints, 0 never inside.
struct Interval1 {
    Rat lo, hi;
    bool lo_open = true;
    bool hi_open = false;

    // smallest/largest integer inside; nullopt if none
    std::optional<std::pair<BigInt, BigInt>> integer_range() const;
    long long integer_count() const;
    Interval1 scaled_down(std::uint64_t m) const;  // {t : m t in this}
    Rat max_abs() const;
    bool contains(const Rat& t) const;
};

// ]U, zeta U] for U > 0, [zeta U, U[ for U < 0
Interval1 geometric_cell(const Rat& U, const Rat& zeta);

struct Box3 {
    Interval1 I, J, K;
};

// zeta = 1 + delta; cells have endpoints +-zeta^n, n >= -1
struct GeomGrid {
    Rat delta;
    Rat zeta;
    explicit GeomGrid(const Rat& d);
    // all cells with |endpoints| <= bound on one axis; both signs optional
    std::vector<Interval1> axis_cells(const Rat& bound, bool both_signs) const;
};

struct EquidistConstants {
    Rat theta = rat(29, 300);
    Rat lambda = rat(46, 75);
};

// N(I,J,K;q,a)  = #{(u,v,w) in box, uvw = a mod q}, gcd(a,q)=1 required
long long N_count(const Box3& box, std::uint64_t q, std::int64_t a);
// N*(I,J,K;q)   = #{gcd(uvw,q)=1}/phi(q)
Rat N_star(const Box3& box, std::uint64_t q);
// variants with gcd(v,bw) = 1
long long N_b_count(const Box3& box, std::uint64_t q, std::int64_t a, std::uint64_t b);
Rat N_b_star(const Box3& box, std::uint64_t q, std::uint64_t b);

// The double Mobius expansion of N_b: sum over squarefree k coprime to b
// and l | b with gcd(kl,q)=1 of mu(k)mu(l) N(I, J_{kl}, K_k; q, (k^2 l)^{-1} a).
// Exactly equal to N_b_count.
long long mobius_expand_Nb(const Box3& box, std::uint64_t q, std::int64_t a, std::uint64_t b);

// E(X,q) = X^{1/2}/q^{1/150} (X/q^2)^{17/150}
double E_bound(double X, double q);

// Region S(X,X1,X2,T,Z,L1,L2): (x,y,z) in R_{>=0}^2 x R with
//   (A) x y^2 |xyz+T| <= X1     (B) x z^2 <= X2     (C) x y |z| <= X
//   (D) Z <= |xyz+T|            (E) L1 <= y         (F) L2 <= |z|
struct RegionS {
    Rat X, X1, X2, T, Z, L1, L2;
};

bool S_member(const RegionS& s, const Rat& x, const Rat& y, const Rat& z);

long long D_count(const RegionS& s, std::uint64_t q, std::int64_t a);
Rat D_star(const RegionS& s, std::uint64_t q);
long long D_b_count(const RegionS& s, std::uint64_t q, std::int64_t a, std::uint64_t b);
Rat D_b_star(const RegionS& s, std::uint64_t q, std::uint64_t b);

// Geometric cell decomposition of S: cells whose nonzero lattice points all
// lie in S (inside) and cells meeting both S and its complement through
// lattice points (boundary). Together they cover S cap Z^3 exactly once
// (S has no lattice points with a zero coordinate when Z > T).
struct BoxDecomposition {
    std::vector<Box3> inside;
    std::vector<Box3> boundary;
};
BoxDecomposition box_decompose(const RegionS& s, const GeomGrid& grid);

struct EquidistDetailRow {
    double X;
    std::uint64_t q;
    std::int64_t a;
    long long N;
    Rat N_star;
    double err;
    double E;
};
std::vector<EquidistDetailRow> experiment_detail(const RegionS& s, std::uint64_t q,
                                                 std::uint64_t b);

struct EquidistRow {
    double X;
    std::uint64_t q;
    double delta;
    std::uint64_t b;
    double max_err;
    double mean_err;
    double E;
    double main_shape;  // sigma_{-lambda}(b)^{1/4} X^{1/2}/q^{1/600} (X/q^2)^{1/2-theta}
};

struct EquidistConfig {
    std::vector<std::uint64_t> Xs;
    std::vector<std::uint64_t> qs;
    double delta = 0.0;  // 0 = report q^{-1/600}(q^2/X)^{29/300} per row
    std::uint64_t b = 1;
};
std::vector<EquidistRow> experiment_equidist(const EquidistConfig& cfg);

// canonical bounded region template used by the experiment harness
RegionS experiment_region(std::uint64_t X);

}  // namespace maninlab
