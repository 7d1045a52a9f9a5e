#pragma once

#include <string>
#include <vector>

#include "adjoints/divisor.hpp"
#include "adjoints/multipoly.hpp"

namespace adjoints {

// One conjugacy class of singular points of a plane curve, located in an
// affine chart. The point is (root of minpoly_x, y_expr(root)) in the sheared
// local coordinates (u, v) = (x_loc - shear*y_loc, y_loc) of that chart.
struct SingularPointDesc {
    int chart = 2;          // variable index of the chart coordinate
    MultiPoly minpoly_x;    // irreducible univariate in the first local coordinate
    MultiPoly y_expr;       // second coordinate as a polynomial in the root
    long shear = 0;
    long multiplicity = 0;  // local intersection of the curve with u = u0 (diagnostic)
};

// One branch (conjugacy class of places) through a singular point:
// u = u0 + tau^e, v = v0 + v_series(tau) over `tower`, in the sheared frame.
struct PuiseuxBranch {
    SingularPointDesc point;
    TowerPtr tower;          // no transcendentals
    TowerElem u0, v0;
    long e = 1;
    TruncLaurent v_series;   // ord >= 1
    long class_degree = 1;   // product of the residue-class degrees picked up
};

// All singular points of the projective curve {F = 0}, grouped by chart in
// the order z, y, x; points already covered by an earlier chart are not
// repeated. Charts are sheared as needed so every conjugacy class has an
// expressible second coordinate and the local equations are regular.
std::vector<SingularPointDesc> affine_singular_points(const MultiPoly& F);

// Complete set of branches of the affine curve F_affine at the point, with
// v_series computed through tau^frontier.
std::vector<PuiseuxBranch> puiseux_branches(const MultiPoly& F_affine,
                                            const SingularPointDesc& point,
                                            std::int64_t frontier);

// Packages branches as formal prime divisors of the projective curve F
// (images in the original coordinates, chart coordinate exactly 1).
std::vector<FormalPrimeDivisor> branches_to_divisors(const MultiPoly& F,
                                                     const std::vector<PuiseuxBranch>& branches,
                                                     std::int64_t frontier);

// Dehomogenization of a trivariate F in the given chart; the result has
// degree zero in the chart variable.
MultiPoly dehomogenize_chart(const MultiPoly& F, int chart);

// Whole-curve driver: singular points, branches, divisors. `frontier` <= 0
// selects the default 2*d^2 + 4.
std::vector<FormalPrimeDivisor> curve_divisors(const MultiPoly& F, std::int64_t frontier = 0);

}  // namespace adjoints
