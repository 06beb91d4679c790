#include "maninlab/surface.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "maninlab/parallel.hpp"
#include "maninlab/primes.hpp"
#include "maninlab/rat.hpp"

namespace maninlab {

namespace {

constexpr long long kCoordLimit = 2'000'000;  // keeps every __int128 product exact

long long gcd4(long long a, long long b, long long c, long long d) {
    return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::gcd(std::abs(c), std::abs(d)));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

__int128 f_eval(long long x0, long long x1, long long x2, long long x3) {
    if (std::abs(x0) > kCoordLimit || std::abs(x1) > kCoordLimit ||
        std::abs(x2) > kCoordLimit || std::abs(x3) > kCoordLimit)
        throw BudgetError("f_eval: coordinate beyond supported range");
    __int128 t3 = x3;
    return t3 * t3 * ((__int128)x1 + x3) + (__int128)x0 * x1 * x2;
}

std::array<__int128, 4> f_gradient(const ProjPoint& p) {
    __int128 x0 = p.x0, x1 = p.x1, x2 = p.x2, x3 = p.x3;
    return {x1 * x2, x3 * x3 + x0 * x2, x0 * x1, 2 * x3 * x1 + 3 * x3 * x3};
}

bool on_surface(const ProjPoint& p) { return f_eval(p) == 0; }

bool is_primitive(const ProjPoint& p) { return gcd4(p.x0, p.x1, p.x2, p.x3) == 1; }

long long height(const ProjPoint& p) {
    return std::max(std::max(std::abs(p.x0), std::abs(p.x1)),
                    std::max(std::abs(p.x2), std::abs(p.x3)));
}

bool on_line(const ProjPoint& p) {
    if (!on_surface(p)) throw std::domain_error("on_line: point not on V");
    return p.x0 == 0 || p.x1 == 0 || p.x2 == 0 || p.x3 == 0;
}

std::vector<std::pair<ProjPoint, SingType>> singular_points() {
    return {{ProjPoint{0, 1, 0, 0}, SingType::A1},
            {ProjPoint{1, 0, 0, 0}, SingType::A2},
            {ProjPoint{0, 0, 1, 0}, SingType::A2}};
}

std::vector<Line> lines() {
    auto e = [](int i) {
        std::array<long long, 4> v{0, 0, 0, 0};
        v[i] = 1;
        return v;
    };
    std::array<long long, 4> x1px3{0, 1, 0, 1};
    std::vector<Line> ls;
    for (int i : {0, 1, 2}) ls.push_back({e(i), e(3), "x" + std::to_string(i) + "=x3=0"});
    for (int j : {0, 2}) ls.push_back({e(j), x1px3, "x" + std::to_string(j) + "=x1+x3=0"});
    return ls;
}

CountResult count_naive(long long B) {
    if (B < 1) throw std::domain_error("count_naive: B must be >= 1");
    if (B > 60) throw BudgetError("count_naive: B > 60 exceeds the O(B^3) budget");
    auto t0 = std::chrono::steady_clock::now();
    long long count = 0;
    for (long long x1 = 1; x1 <= B; ++x1)
        for (long long x2 = -B; x2 <= B; ++x2) {
            if (x2 == 0) continue;
            for (long long x3 = -B; x3 <= B; ++x3) {
                if (x3 == 0 || x1 + x3 == 0) continue;
                long long num = -x3 * x3 * (x1 + x3);
                long long den = x1 * x2;
                if (num % den != 0) continue;
                long long x0 = num / den;
                if (x0 == 0 || std::abs(x0) > B) continue;
                if (gcd4(x0, x1, x2, x3) != 1) continue;
                ++count;
            }
        }
    return {B, count, "naive", seconds_since(t0)};
}

namespace {

// Shared enumeration core: for every U-point of height <= B with x1 > 0,
// calls sink(point). Points are visited exactly once since (x1,x2,x3)
// determines x0.
template <typename Sink>
void enumerate_direct(long long B, long long x1_begin, long long x1_end, Sink&& sink) {
    for (long long x1 = x1_begin; x1 < x1_end; ++x1) {
        for (long long x3 = -B; x3 <= B; ++x3) {
            if (x3 == 0 || x1 + x3 == 0) continue;
            long long K = x3 * x3 * (x1 + x3);
            if (K % x1 != 0) continue;
            long long N = -(K / x1);  // = x0 * x2
            if (std::abs(N) > B * B) continue;
            for (std::uint64_t d : divisors((std::uint64_t)std::abs(N))) {
                if ((long long)d > B) continue;
                long long q = std::abs(N) / (long long)d;
                if (q > B) continue;
                for (int s : {1, -1}) {
                    long long x0 = s * (long long)d;
                    long long x2 = N / x0;
                    if (gcd4(x0, x1, x2, x3) != 1) continue;
                    sink(ProjPoint{x0, x1, x2, x3});
                }
            }
        }
    }
}

}  // namespace

CountResult count_direct(long long B, unsigned threads) {
    if (B < 1) throw std::domain_error("count_direct: B must be >= 1");
    if (B > 1'000'000) throw BudgetError("count_direct: B beyond desk-scale budget");
    auto t0 = std::chrono::steady_clock::now();
    long long count = parallel_reduce<long long>(
        (std::uint64_t)B, threads, 0,
        [&](std::uint64_t b, std::uint64_t e) {
            long long c = 0;
            enumerate_direct(B, (long long)b + 1, (long long)e + 1,
                             [&](const ProjPoint&) { ++c; });
            return c;
        },
        [](long long& acc, const long long& v) { acc += v; });
    return {B, count, "direct", seconds_since(t0)};
}

std::vector<long long> direct_height_histogram(long long Bmax, unsigned threads) {
    if (Bmax < 1) throw std::domain_error("direct_height_histogram: Bmax >= 1");
    using Hist = std::vector<long long>;
    Hist hist = parallel_reduce<Hist>(
        (std::uint64_t)Bmax, threads, Hist(Bmax + 1, 0),
        [&](std::uint64_t b, std::uint64_t e) {
            Hist h(Bmax + 1, 0);
            enumerate_direct(Bmax, (long long)b + 1, (long long)e + 1,
                             [&](const ProjPoint& p) { ++h[height(p)]; });
            return h;
        },
        [](Hist& acc, const Hist& v) {
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
        });
    return hist;
}

std::vector<ProjPoint> audit_points(long long B, unsigned threads) {
    if (B > 1000) throw BudgetError("audit_points: audit mode is for B <= 1000");
    (void)threads;
    std::vector<ProjPoint> pts;
    enumerate_direct(B, 1, B + 1, [&](const ProjPoint& p) { pts.push_back(p); });
    for (const ProjPoint& p : pts) {
        if (!on_surface(p) || !is_primitive(p) || p.x1 <= 0 || on_line(p) || height(p) > B)
            throw InvariantError("audit_points: emitted point violates an invariant");
    }
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
        throw InvariantError("audit_points: duplicate point");
    return pts;
}

std::string to_csv_row(const ProjPoint& p) {
    return std::to_string(p.x0) + "," + std::to_string(p.x1) + "," + std::to_string(p.x2) +
           "," + std::to_string(p.x3);
}

}  // namespace maninlab
