#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace maninlab {

// =========================================================================
// The cubic surface V in P^3:
//
//     f(x) = x3^2 (x1 + x3) + x0 x1 x2 = 0.
//
// V contains five lines (x_i = x3 = 0 for i in {0,1,2} and
// x_j = x1 + x3 = 0 for j in {0,2}) and three singular points, one of type
// A1 and two of type A2. U is the complement of the lines; a point of V
// lies in U iff all four coordinates are nonzero. U-points are represented
// by their unique primitive integer quadruple with x1 > 0.
//
// N_{U,H}(B) counts points of U with max|x_i| <= B; we compute it by two
// independent enumerations (plus a third, the torsor count, elsewhere).
// =========================================================================

struct ProjPoint {
    long long x0 = 0, x1 = 0, x2 = 0, x3 = 0;
    auto operator<=>(const ProjPoint&) const = default;
};

// Exact value of the cubic form. Coordinates up to ~1e6 in absolute value
// stay well inside the __int128 intermediate range.
__int128 f_eval(long long x0, long long x1, long long x2, long long x3);
inline __int128 f_eval(const ProjPoint& p) { return f_eval(p.x0, p.x1, p.x2, p.x3); }

std::array<__int128, 4> f_gradient(const ProjPoint& p);

bool on_surface(const ProjPoint& p);
bool is_primitive(const ProjPoint& p);
long long height(const ProjPoint& p);

// true iff the point (assumed on V) lies on one of the five lines
bool on_line(const ProjPoint& p);

enum class SingType { A1, A2 };
std::vector<std::pair<ProjPoint, SingType>> singular_points();

// A line as the pair of vanishing linear forms, each form given by its
// coefficient vector (c0,c1,c2,c3) meaning c.x = 0.
struct Line {
    std::array<long long, 4> form1;
    std::array<long long, 4> form2;
    std::string label;
};
std::vector<Line> lines();

struct CountResult {
    long long B = 0;
    long long count = 0;
    std::string method;
    double elapsed = 0.0;
};

// O(B^3) reference oracle; refuses B > 60.
CountResult count_naive(long long B);

// Main enumeration: for each (x1,x3) solves x0 x2 = -x3^2(x1+x3)/x1 by
// divisor enumeration. threads = 0 means the default pool size.
CountResult count_direct(long long B, unsigned threads = 0);

// counts[h] = #points of height exactly h, h = 1..Bmax; prefix sums give
// N_{U,H}(B) for every B <= Bmax in one enumeration
std::vector<long long> direct_height_histogram(long long Bmax, unsigned threads = 0);

// Audit mode: the full point list, sorted lexicographically. Every point
// is checked against f = 0, primitivity, nonzero coordinates, x1 > 0 and
// the height bound; duplicates are a hard failure.
std::vector<ProjPoint> audit_points(long long B, unsigned threads = 0);

std::string to_csv_row(const ProjPoint& p);

}  // namespace maninlab
