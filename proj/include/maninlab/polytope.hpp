#pragma once

#include <optional>
#include <vector>

#include "maninlab/rat.hpp"

namespace maninlab {

// H-polytope {x in R^d : A x <= b}. Nonnegativity constraints are ordinary
// rows (-e_i . x <= 0). Volume is exact rational, computed by the signed
// facet recursion: by the divergence theorem, for any reference point x0,
//
//   d vol(P) = sum_i (b_i - a_i.x0)/|a_{i,j}| vol_{d-1}(proj_j F_i),
//
// where F_i is the facet on a_i.x = b_i, j is any coordinate with
// a_{i,j} != 0, and proj_j eliminates x_j through the facet equality. The
// recursion bottoms out at interval lengths. Unboundedness surfaces as a
// missing interval bound at some level and is reported as an error.
struct PolytopeH {
    int dim = 0;
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;

    void add_constraint(std::vector<Rat> row, Rat rhs);
    void add_nonnegativity();  // x_i >= 0 for all coordinates
};

struct PolytopeUnbounded : InvariantError {
    PolytopeUnbounded() : InvariantError("polytope is unbounded") {}
};
struct PolytopeEmpty : InvariantError {
    PolytopeEmpty() : InvariantError("polytope is empty") {}
};

// exact Euclidean volume; throws PolytopeUnbounded / PolytopeEmpty
Rat polytope_volume(const PolytopeH& P);

// all vertices (basic feasible solutions), deduplicated, unordered
std::vector<std::vector<Rat>> polytope_vertices(const PolytopeH& P);

// vertex centroid if it satisfies every constraint strictly
std::optional<std::vector<Rat>> polytope_interior_point(const PolytopeH& P);

}  // namespace maninlab
