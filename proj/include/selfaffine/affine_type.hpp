#pragma once

#include <array>
#include <string>

#include "selfaffine/geometry.hpp"

namespace selfaffine {

/// The eight canonical regions of the (x, y) parameter plane. A convex
/// quadrangle has one parametrization in each; the one in P is canonical.
enum class Region {
    P,
    Pprime,
    P2prime,
    P3prime,
    Pbar,
    Pbarprime,
    Pbar2prime,
    Pbar3prime,
};

std::string to_string(Region r);

/// The eight parameter substitutions, indexed in the fixed order
/// identity, cycle, cycle^2, cycle^3, swap, swap*cycle, swap*cycle^2,
/// swap*cycle^3. Substitution k maps the canonical pair onto the pair lying
/// in region k.
enum class Substitution {
    Identity,
    Cycle,
    Cycle2,
    Cycle3,
    Swap,
    SwapCycle,
    SwapCycle2,
    SwapCycle3,
};

std::string to_string(Substitution s);

struct NaturalParams {
    double x = 0.0;
    double y = 0.0;
    Region region = Region::P;
};

struct GcParams {
    double alpha = 0.0;
    double beta = 0.0;
};

enum class ShapeClass { Parallelogram, Trapezoid, AffineKite, Generic };

std::string to_string(ShapeClass s);

/// True if (x, y) encodes a convex quadrangle: x > 0, y > 0, x + y > 1
/// (all strict at tolerance).
bool is_valid_convex_params(double x, double y, double tol = kDefaultTol);

/// Applies substitution k to (x, y). Requires valid convex params.
Point2 apply_substitution(Substitution s, double x, double y);

/// Region containing (x, y), with coordinates snapped to region boundaries
/// within tol before assignment. Ties resolve in enum order; P wins.
Region region_of(double x, double y, double tol = kDefaultTol);

/// All eight parametrizations of the affine type of (x, y), each labelled
/// with its region, in the fixed substitution order. Throws InvalidParams.
std::array<NaturalParams, 8> eight_parametrizations(double x, double y,
                                                    double tol = kDefaultTol);

struct CanonicalResult {
    NaturalParams params;        // lies in region P
    Substitution applied;        // the substitution that was applied
    Region input_region;         // region of the input pair
};

/// Canonical representative in P = {x+y > 1, y <= 1, x <= y}.
CanonicalResult normalize_to_P(double x, double y, double tol = kDefaultTol);

/// Shape classification of the affine type (after canonicalization).
ShapeClass classify_shape(double x, double y, double tol = kDefaultTol);

/// Translation between the gc-parametrization of non-trapezoids and the
/// natural one: (x, y) = ((1-beta)/(1-alpha), beta).
NaturalParams gc_to_natural(const GcParams& g, double tol = kDefaultTol);
GcParams natural_to_gc(double x, double y, double tol = kDefaultTol);

/// The dual gc pair describing the same affine type.
GcParams gc_dual(const GcParams& g);

}  // namespace selfaffine
