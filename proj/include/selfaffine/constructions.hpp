#pragma once

#include <array>
#include <vector>

#include "selfaffine/dissection.hpp"

namespace selfaffine {

/// Standard trapezoid with parallel-side ratio z: (0,0),(1,0),(z,1),(0,1).
/// z = 1 gives the parallelogram.
Quadrangle standard_trapezoid(double z);

/// Three parallel strips between the parallel sides, cut proportionally at
/// the given positive weights (which must sum to 1).
Dissection trapezoid_A(double z, const std::array<double, 3>& weights,
                       double tol = kDefaultTol);

/// One full cut plus one sub-cut; the split ratio zeta = z/(1+z+z^2) makes
/// all three pieces the same affine type as the trapezoid.
Dissection trapezoid_B(double z, double tol = kDefaultTol);

/// Cut ratio of the type-B construction.
double trapezoid_B_zeta(double z);

/// Interior-vertex dissection of a non-parallelogram trapezoid: the lower
/// left piece is the z-dilation about (0,0), putting the interior vertex at
/// (z^2, z). Throws ParallelogramExcluded when z is 1 within tolerance.
Dissection trapezoid_C(double z, double tol = kDefaultTol);

/// Non-convex quadrangle ((0,1),(0,0),(1,0),(x,y)) with the reflex vertex at
/// (x, y); requires x, y > 0 and x + y < 1.
Quadrangle nonconvex_quadrangle(double x, double y, double tol = kDefaultTol);

/// The contraction fixing (1,0) and (0,1) that drives the chain dissection.
AffineMap2 nonconvex_chain_map(double x, double y);

/// Scale factor of the m-th chain vertex: (1 - (1-(x+y))^m) / (x+y).
double chain_factor(double x, double y, int m);

/// Dissects the non-convex quadrangle with reflex vertex at
/// chain_factor(x,y,k)*(x,y) into the k chain images of Q[x,y]. For k >= 2
/// the pieces are copies of Q[x,y], not of the parent, so the dissection
/// carries a source override.
Dissection nonconvex_chain(double x, double y, int k, double tol = kDefaultTol);

struct SplitResult {
    Quadrangle piece;      // the affine copy cut off Q[x,y]
    AffineMap2 map;        // sends Q[x,y] onto the piece
    Quadrangle remainder;  // may be convex, non-convex or degenerate
};

/// Splits Q[x,y] into an affine copy of itself and the remainder with
/// vertices (0,0),(1,0),(x,y),(x^2,(1-x)(1-y)).
SplitResult nonconvex_split(double x, double y, double tol = kDefaultTol);

/// f_n(x) = (1-(1-x)^(2n-2))(1-x+x^2) - x(2-x); its roots in (0,1) select
/// the parameters making the n-piece non-convex assembly close up.
double f_n(int n, double x);

/// All roots of f_n in the open unit interval (sign scan on a 10^4 grid,
/// bisection to 1e-14). Requires n >= 3.
std::vector<double> solve_f_n(int n);

/// The assembly map of the n-piece construction for root x0.
AffineMap2 nonconvex_assembly_map(double x0);

/// Residual of the closure condition: how far the assembly map sends the
/// chain parent's reflex vertex from the split remainder's reflex vertex.
/// Zero exactly when f_n(x0) = 0.
double assembly_closure_residual(int n, double x0);

/// n-piece self-affine non-convex quadrangle Q[x0, x0(1-x0)] built from the
/// smallest root x0 of f_n. Requires n >= 3.
Dissection nonconvex_n_self_affine(int n, double tol = kDefaultTol);

/// Affine invariant of a non-convex quadrangle: the length ratio between the
/// inner diagonal and the segment from its convex end to the outer diagonal.
/// Throws DegenerateDiagonals when the two diagonals are parallel.
double diagonal_invariant(const Quadrangle& q, double tol = kDefaultTol);

}  // namespace selfaffine
