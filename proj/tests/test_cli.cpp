#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "maninlab/report.hpp"
#include "maninlab/rng.hpp"

using namespace maninlab;

TEST_CASE("csv emission: header, LF endings, stable formatting") {
    Table t;
    t.header = {"B", "count", "ratio", "c_lo", "c_hi"};
    t.rows.push_back({"100", "1234", format_double(0.5), format_double(1e-6),
                      format_double(2e-6)});
    std::string csv = to_csv(t);
    CHECK(csv == "B,count,ratio,c_lo,c_hi\n100,1234,0.5,1e-06,2e-06\n");
    CHECK(csv.find("\r") == std::string::npos);

    Table empty;
    empty.header = {"X", "q"};
    CHECK(to_csv(empty) == "X,q\n");  // header-only file for an empty report

    const char* path = "test_emit.csv";
    emit_plot_data(t, path);
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == csv);
    std::remove(path);
}

TEST_CASE("counter rng: deterministic, splittable, uniform-ish") {
    SplitRng a{123, 0};
    SplitRng b{123, 0};
    for (std::uint64_t i = 0; i < 100; ++i) CHECK(a.bits(i) == b.bits(i));
    SplitRng c{124, 0};
    CHECK(a.bits(0) != c.bits(0));
    SplitRng s1 = a.split(1), s2 = a.split(2);
    CHECK(s1.bits(0) != s2.bits(0));
    double mean = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) mean += a.uniform(i);
    CHECK(mean / 10000 == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("halton is a fixed low-discrepancy stream") {
    CHECK(halton(1, 2) == doctest::Approx(0.5));
    CHECK(halton(2, 2) == doctest::Approx(0.25));
    CHECK(halton(3, 2) == doctest::Approx(0.75));
    CHECK(halton(1, 3) == doctest::Approx(1.0 / 3.0));
    double mean = 0;
    for (std::uint64_t i = 1; i <= 729; ++i) mean += halton(i, 3);
    CHECK(mean / 729 == doctest::Approx(0.5).epsilon(0.01));
}
