#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selfaffine/affine_type.hpp"
#include "selfaffine/poly2.hpp"

namespace selfaffine {

/// The five solution families of the classification, as algebraic curves in
/// the canonical region P.
enum class FamilyName { T, A, B1, B2, C };

std::string to_string(FamilyName f);
std::optional<FamilyName> family_from_string(const std::string& s);

struct FamilyCurve {
    FamilyName name;
    Poly2 polynomial;

    /// Domain constraints of the family (beyond the polynomial).
    bool in_domain(double x, double y, double tol = kDefaultTol) const;
};

const FamilyCurve& family_curve(FamilyName name);
const std::vector<FamilyCurve>& all_family_curves();

/// Value of the defining polynomial at (x, y); zero on the algebraic curve.
double curve_residual(const FamilyCurve& curve, double x, double y);

/// Gradient-normalized residual, an estimate of the distance to the curve.
double curve_distance(const FamilyCurve& curve, double x, double y);

/// One isolated affine type admitting a 3-piece dissection of the interior-
/// vertex kind: the defining two-equation system, its refined numeric value
/// and, for three rows, an exact closed form.
struct SingularSolution {
    int id = 0;  // 1..13
    Poly2 eq1, eq2;
    Point2 seed{};             // printed 5-decimal start value
    Point2 value{};            // Newton-refined, residual < 1e-12
    std::string closed_form;   // empty when none is known
    std::optional<Point2> closed_value;
};

/// All 13 singular solutions, refined once at first use.
/// Throws ConvergenceFailure if any refinement stalls.
const std::vector<SingularSolution>& table1_solutions();

/// The distinguished point on curve C that also solves
/// {y^2 + x - 1 = 0, x^2 - x - y + 1 = 0}; its x is the root of
/// x^3 - 2x^2 + 3x - 1 in (0, 1).
Point2 special_point();

struct Membership {
    std::vector<FamilyName> families;
    std::vector<int> singular_ids;  // matched rows, by distance
    bool special = false;
};

/// Memberships of the affine type of (x, y) after normalization to P.
/// Empty result means the type admits no 3-piece self-affinity.
Membership is_member(double x, double y, double tol = 1e-6);

/// n points on the curve with polynomial residual < 1e-12, produced by
/// root isolation in y along a uniform sweep of x.
std::vector<Point2> sample_curve(FamilyName name, int n);

/// All domain-valid y-roots of the family polynomial at fixed x.
std::vector<double> curve_roots_at_x(FamilyName name, double x);

/// 2-D Newton for a system {p = 0, q = 0} from a seed. Returns the refined
/// point or nullopt if it fails to reach the residual target.
std::optional<Point2> newton2(const Poly2& p, const Poly2& q, Point2 seed,
                              double residual_target = 1e-13, int max_iters = 100);

}  // namespace selfaffine
