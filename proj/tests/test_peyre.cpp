#include <doctest.h>

#include <cmath>

#include "maninlab/peyre.hpp"
#include "maninlab/primes.hpp"

using namespace maninlab;

TEST_CASE("alpha from Weyl groups") {
    CHECK(alpha_weyl() == rat(1, 8640));
    // #W(A2) = 3! = 6, #W(A1) = 2! = 2
    CHECK(rat(1, 120) / rat(6 * 6 * 2) == rat(1, 8640));
}

TEST_CASE("omega_p closed form") {
    CHECK(omega_p(2) == rat(19, 4));
    CHECK(omega_p(3) == rat(31, 9));
    CHECK_THROWS(omega_p(6));
    // tends to 1
    CHECK(std::fabs(to_double(omega_p(99991)) - 1.0) < 1e-4);
}

TEST_CASE("p-adic solution counts") {
    CHECK(count_solutions_padic(2, 1) == 10);  // exhaustive 16-vector scan
    CHECK(padic_density(2, 1) == doctest::Approx(1.25));
    // density starts well below omega_2 = 4.75 (singular points add mass deeper)
    CHECK(padic_density(2, 1) < to_double(omega_p(2)));
    // frozen deeper counts
    CHECK(count_solutions_padic(2, 2) == 112);
    CHECK(count_solutions_padic(3, 1) == 33);
    CHECK_THROWS_AS(count_solutions_padic(2, 9), BudgetError);
}

TEST_CASE("p-adic densities converge monotonically toward omega_p") {
    for (std::uint64_t p : {2, 3}) {
        unsigned nmax = p == 2 ? 4 : 3;
        double target = to_double(omega_p(p));
        double prev = -1;
        for (unsigned n = 1; n <= nmax; ++n) {
            double err = std::fabs(padic_density(p, n) - target);
            if (n > 1) CHECK(err < prev);
            prev = err;
        }
    }
}

TEST_CASE("h_eval") {
    CHECK(h_eval(0.5, 1.0, 0.5) == doctest::Approx(0.75));
    CHECK(h_eval(2.0, 0.0, 0.0) == doctest::Approx(2.0));
    CHECK(h_eval(1.0, 1.0, 1.0) == doctest::Approx(2.0));
    // region indicator examples
    CHECK(h_eval(0.5, 1.0, 0.5) <= 1.0);
    CHECK(h_eval(2.0, 0.0, 0.0) > 1.0);
}

TEST_CASE("omega_infty: two methods agree, refinement is stable") {
    Interval a = omega_infty_method_a(1e-6);
    Interval b = omega_infty_method_b(200000);
    CHECK(a.intersects(b));
    CHECK(std::fabs(a.mid() - b.mid()) / a.mid() < 1e-3);
    Interval a2 = omega_infty_method_a(5e-7);
    CHECK(std::fabs(a2.mid() - a.mid()) / a.mid() < 1e-4);
    // ballpark (also pins the 12x normalization)
    CHECK(a.mid() == doctest::Approx(34.998).epsilon(1e-3));
}

TEST_CASE("euler product: exact small factors and certified intervals") {
    // single factor p = 2: (1/2)^7 * 19/4 = 19/512
    Rat f2 = rat(1, 128) * omega_p(2);
    CHECK(f2 == rat(19, 512));
    Rat f3 = rat(128, 2187) * omega_p(3);  // (2/3)^7 * 31/9
    Interval e3 = euler_product(3);
    CHECK(e3.contains(to_double(f2 * f3) * std::exp(-27.0 / 25.0)));  // loose sanity
    Interval e4 = euler_product(10000);
    Interval e5 = euler_product(100000);
    CHECK(e4.contains(e5));  // nested
    CHECK(e4.width() < 1e-6);
    CHECK(e5.width() < 1e-6);
    CHECK(e5.mid() == doctest::Approx(0.0013176).epsilon(1e-3));
}

TEST_CASE("c_vh assembles the breakdown") {
    PeyreBreakdown pb = c_vh(1e-4, 10000);
    CHECK(pb.beta == rat(1));
    CHECK(pb.alpha == rat(1, 8640));
    CHECK(pb.c.lo > 0);
    CHECK(pb.c.hi < 1);
    // interval product consistency
    Interval manual = interval_of(pb.alpha) * pb.omega_inf * pb.euler;
    CHECK(pb.c.lo == doctest::Approx(manual.lo));
    CHECK(pb.c.hi == doctest::Approx(manual.hi));
    // refinement shrinks the enclosure
    PeyreBreakdown pb2 = c_vh(1e-5, 100000);
    CHECK(pb2.c.width() < pb.c.width());
}

TEST_CASE("jacobian cross-check is deterministic and agrees") {
    JacobianReport r1 = jacobian_crosscheck(200000, 42, 1);
    JacobianReport r2 = jacobian_crosscheck(200000, 42, 4);
    CHECK(r1.estimate == r2.estimate);  // same seed, any thread count
    JacobianReport r3 = jacobian_crosscheck(200000, 43);
    CHECK(r3.estimate != r1.estimate);
    // x-space region indicator: x = (1,1,-1) gives x3^2|x1+x3| = 0, excluded
    // (covered by construction: lhs > 0 is required)
    CHECK(std::fabs(r1.estimate - r1.reference.mid()) / r1.reference.mid() < 0.1);
}
