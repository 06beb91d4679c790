#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "maninlab/surface.hpp"

namespace maninlab {

// =========================================================================
// Universal torsor coordinates. A U-point (x0,x1,x2,x3) with x1 > 0 maps
// through the gcd cascade
//
//   eta1 = gcd(x0,x2,x3),  y0 = gcd(x1,x2,x3),  y2 = gcd(x0,x1,x3)
//   eta2 = gcd(y0,x2'),    eta4 = gcd(y2,x0'),  eta6 = gcd(x0'',x3')
//   eta8 = +-gcd(x2'',x3''),  z1 = eta7^3
//
// to a ten-tuple (eta1..eta10) in Z_{>0}^7 x Z_{!=0}^3 satisfying
//
//   eta1 eta6 eta8 + eta3 eta5 eta7^2 + eta9 eta10 = 0       (torsor)
//
// together with coprimality conditions gcd1..gcd7 and, at height bound B,
// the four monomial height conditions. The inverse map is monomial:
//
//   x0 = eta1 eta4^2 eta5 eta6^2 eta9
//   x1 = eta2 eta3^2 eta4 eta5^2 eta7^3
//   x2 = eta1 eta2^2 eta3 eta8^2 eta10
//   x3 = eta1 eta2 eta3 eta4 eta5 eta6 eta7 eta8
//
// The sign convention fixing the cascade as a function: sign(eta8) =
// sign(x3''), so eta7 > 0, eta9 carries the sign of x0'' and eta10 the
// sign of x2''.
// =========================================================================

struct TorsorTuple {
    long long e1 = 1, e2 = 1, e3 = 1, e4 = 1, e5 = 1, e6 = 1, e7 = 1;
    long long e8 = 1, e9 = 1, e10 = 1;
    auto operator<=>(const TorsorTuple&) const = default;

    std::array<long long, 10> as_array() const {
        return {e1, e2, e3, e4, e5, e6, e7, e8, e9, e10};
    }
};

inline constexpr long long kNoHeightBound = -1;

TorsorTuple to_torsor(const ProjPoint& p);
ProjPoint from_torsor(const TorsorTuple& t);

// empty list iff gcd1..gcd7 all hold; otherwise the violated tags
std::vector<std::string> check_coprimality(const TorsorTuple& t);

bool satisfies_torsor_equation(const TorsorTuple& t);

// the four height monomials |x0|, x1, |x2|, |x3|
std::array<long long, 4> height_monomials(const TorsorTuple& t);
long long tuple_height(const TorsorTuple& t);

// the four monomial bounds of a tuple at height bound B
struct HeightSystem {
    long long B = 0;
    std::array<long long, 4> monomials{};
    bool satisfied = false;
};
HeightSystem height_system(const TorsorTuple& t, long long B);

// true iff all four monomials are <= B (B = kNoHeightBound means no bound)
bool check_heights(const TorsorTuple& t, long long B);

// #T(B): the torsor-side count of N_{U,H}(B)
CountResult count_torsor(long long B, unsigned threads = 0);
std::vector<long long> torsor_height_histogram(long long Bmax, unsigned threads = 0);
std::vector<TorsorTuple> audit_tuples(long long B, unsigned threads = 0);

// Domain-restriction diagnostics: N0 counts tuples with
// |eta9| = |eta10|; N_A those with 0 < eta10 <= |eta9|, eta6 >= log(B)^A
// and |eta8| >= log(B)^A; small[i] counts tuples with |eta_i| <= log(B)^A.
struct TorsorDiagnostics {
    long long B = 0;
    double A = 0.0;
    long long total = 0;
    long long n0 = 0;
    long long n_A = 0;
    std::array<long long, 8> small{};  // indexed by eta1..eta8
    long long residual_4NA() const { return total - 4 * n_A; }
};
TorsorDiagnostics diagnostics_subsets(long long B, double A, unsigned threads = 0);

std::string to_csv_row(const TorsorTuple& t);

}  // namespace maninlab
