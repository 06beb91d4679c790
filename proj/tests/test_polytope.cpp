#include <doctest.h>

#include <algorithm>

#include "maninlab/peyre.hpp"
#include "maninlab/polytope.hpp"

using namespace maninlab;

namespace {

PolytopeH cube(int d) {
    PolytopeH P;
    P.dim = d;
    for (int i = 0; i < d; ++i) {
        std::vector<Rat> row(d, Rat(0));
        row[i] = Rat(1);
        P.add_constraint(row, Rat(1));
    }
    P.add_nonnegativity();
    return P;
}

PolytopeH simplex(int d) {
    PolytopeH P;
    P.dim = d;
    P.add_constraint(std::vector<Rat>(d, Rat(1)), Rat(1));
    P.add_nonnegativity();
    return P;
}

}  // namespace

TEST_CASE("cube and simplex volumes") {
    CHECK(polytope_volume(cube(6)) == rat(1));
    CHECK(polytope_volume(simplex(6)) == rat(1, 720));
    CHECK(polytope_volume(cube(3)) == rat(1));
    CHECK(polytope_volume(simplex(3)) == rat(1, 6));
}

TEST_CASE("Peyre polytope: volume 1/2880 and both alpha routes") {
    PolytopeH P = peyre_polytope();
    CHECK(polytope_volume(P) == rat(1, 2880));
    CHECK(alpha_polytope() == rat(1, 8640));
    CHECK(alpha_weyl() == rat(1, 8640));
    CHECK(alpha_polytope() == alpha_weyl());
    // nonempty with a rational interior point
    auto ip = polytope_interior_point(P);
    REQUIRE(ip.has_value());
    auto verts = polytope_vertices(P);
    CHECK(verts.size() >= 7);  // full-dimensional needs at least d+1
}

TEST_CASE("scaling: doubling all right-hand sides scales volume by 2^6") {
    PolytopeH P = peyre_polytope();
    PolytopeH Q = P;
    for (auto& b : Q.b) b *= 2;
    CHECK(polytope_volume(Q) == polytope_volume(P) * 64);
}

TEST_CASE("volume is invariant under coordinate permutation") {
    PolytopeH P = peyre_polytope();
    // rotate coordinates: column i -> column (i+1) mod 6
    PolytopeH Q;
    Q.dim = 6;
    for (std::size_t r = 0; r < P.A.size(); ++r) {
        std::vector<Rat> row(6);
        for (int i = 0; i < 6; ++i) row[(i + 1) % 6] = P.A[r][i];
        Q.add_constraint(row, P.b[r]);
    }
    CHECK(polytope_volume(Q) == polytope_volume(P));
    // reverse permutation
    PolytopeH R;
    R.dim = 6;
    for (std::size_t r = 0; r < P.A.size(); ++r) {
        std::vector<Rat> row(6);
        for (int i = 0; i < 6; ++i) row[5 - i] = P.A[r][i];
        R.add_constraint(row, P.b[r]);
    }
    CHECK(polytope_volume(R) == polytope_volume(P));
}

TEST_CASE("unbounded and empty polytopes are rejected") {
    PolytopeH U;
    U.dim = 2;
    U.add_constraint({Rat(1), Rat(0)}, Rat(1));  // x <= 1 only: unbounded
    CHECK_THROWS_AS(polytope_volume(U), PolytopeUnbounded);

    PolytopeH E;
    E.dim = 2;
    E.add_constraint({Rat(1), Rat(0)}, Rat(-1));  // x <= -1
    E.add_constraint({Rat(0), Rat(1)}, Rat(1));
    E.add_nonnegativity();                        // x >= 0 contradicts
    CHECK_THROWS_AS(polytope_volume(E), PolytopeEmpty);
}

TEST_CASE("degenerate slab has zero volume") {
    PolytopeH S;
    S.dim = 2;
    S.add_constraint({Rat(1), Rat(0)}, Rat(1, 2));
    S.add_constraint({Rat(-1), Rat(0)}, rat(-1, 2));  // x = 1/2 exactly
    S.add_constraint({Rat(0), Rat(1)}, Rat(1));
    S.add_constraint({Rat(0), Rat(-1)}, Rat(0));
    CHECK(polytope_volume(S) == rat(0));
}
