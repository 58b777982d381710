#include "selfaffine/affine_type.hpp"

#include <cmath>

namespace selfaffine {

std::string to_string(Region r) {
    switch (r) {
        case Region::P: return "P";
        case Region::Pprime: return "Pprime";
        case Region::P2prime: return "P2prime";
        case Region::P3prime: return "P3prime";
        case Region::Pbar: return "Pbar";
        case Region::Pbarprime: return "Pbarprime";
        case Region::Pbar2prime: return "Pbar2prime";
        case Region::Pbar3prime: return "Pbar3prime";
    }
    return "?";
}

std::string to_string(Substitution s) {
    switch (s) {
        case Substitution::Identity: return "identity";
        case Substitution::Cycle: return "cycle";
        case Substitution::Cycle2: return "cycle2";
        case Substitution::Cycle3: return "cycle3";
        case Substitution::Swap: return "swap";
        case Substitution::SwapCycle: return "swap_cycle";
        case Substitution::SwapCycle2: return "swap_cycle2";
        case Substitution::SwapCycle3: return "swap_cycle3";
    }
    return "?";
}

std::string to_string(ShapeClass s) {
    switch (s) {
        case ShapeClass::Parallelogram: return "parallelogram";
        case ShapeClass::Trapezoid: return "trapezoid";
        case ShapeClass::AffineKite: return "affine_kite";
        case ShapeClass::Generic: return "generic";
    }
    return "?";
}

bool is_valid_convex_params(double x, double y, double tol) {
    return x > tol && y > tol && x + y > 1.0 + tol;
}

namespace {

Point2 cycle_once(double x, double y) { return {1.0 / y, (x + y - 1.0) / y}; }

void require_valid(double x, double y, double tol) {
    if (!is_valid_convex_params(x, y, tol))
        throw InvalidParams("params must satisfy x > 0, y > 0, x + y > 1");
}

}  // namespace

Point2 apply_substitution(Substitution s, double x, double y) {
    Point2 p{x, y};
    int k = static_cast<int>(s);
    for (int i = 0; i < (k & 3); ++i) p = cycle_once(p.x, p.y);
    if (k >= 4) p = {p.y, p.x};
    return p;
}

Region region_of(double x, double y, double tol) {
    // Snap to the dividing lines before testing so that boundary inputs
    // classify stably.
    if (std::fabs(x - 1.0) <= tol) x = 1.0;
    if (std::fabs(y - 1.0) <= tol) y = 1.0;
    if (std::fabs(x - y) <= tol) x = y = 0.5 * (x + y);
    if (std::fabs(x + y - 2.0) <= tol) {
        double d = (x + y - 2.0) * 0.5;
        x -= d;
        y -= d;
    }

    if (x + y > 1.0 && y <= 1.0 && x <= y) return Region::P;
    if (y > 0.0 && x >= 1.0 && x + y <= 2.0) return Region::Pprime;
    if (y >= 1.0 && x >= y) return Region::P2prime;
    if (x > 0.0 && x <= 1.0 && x + y >= 2.0) return Region::P3prime;
    if (x + y > 1.0 && x <= 1.0 && x >= y) return Region::Pbar;
    if (x > 0.0 && y >= 1.0 && x + y <= 2.0) return Region::Pbarprime;
    if (x >= 1.0 && x <= y) return Region::Pbar2prime;
    return Region::Pbar3prime;
}

std::array<NaturalParams, 8> eight_parametrizations(double x, double y, double tol) {
    require_valid(x, y, tol);
    std::array<NaturalParams, 8> out{};
    for (int k = 0; k < 8; ++k) {
        Point2 p = apply_substitution(static_cast<Substitution>(k), x, y);
        out[k] = {p.x, p.y, region_of(p.x, p.y, tol)};
    }
    return out;
}

CanonicalResult normalize_to_P(double x, double y, double tol) {
    auto all = eight_parametrizations(x, y, tol);
    for (int k = 0; k < 8; ++k) {
        double px = all[k].x, py = all[k].y;
        if (px + py > 1.0 - tol && py <= 1.0 + tol && px <= py + tol) {
            CanonicalResult r;
            r.params = {px, py, Region::P};
            r.applied = static_cast<Substitution>(k);
            r.input_region = region_of(x, y, tol);
            return r;
        }
    }
    throw InvalidParams("normalize_to_P: no parametrization landed in P");
}

ShapeClass classify_shape(double x, double y, double tol) {
    auto c = normalize_to_P(x, y, tol).params;
    // Classification happens in P, so kites sit on x = y; the x + y = 2 line
    // meets P only at (1,1).
    double snap = std::max(tol, 1e-9);
    bool x_is_one = std::fabs(c.x - 1.0) <= snap;
    bool y_is_one = std::fabs(c.y - 1.0) <= snap;
    if (x_is_one && y_is_one) return ShapeClass::Parallelogram;
    if (y_is_one) return ShapeClass::Trapezoid;
    if (std::fabs(c.x - c.y) <= snap || std::fabs(c.x + c.y - 2.0) <= snap)
        return ShapeClass::AffineKite;
    return ShapeClass::Generic;
}

NaturalParams gc_to_natural(const GcParams& g, double tol) {
    if (!(g.alpha > tol && g.alpha + tol < g.beta && g.beta < 1.0 - tol))
        throw InvalidParams("gc params must satisfy 0 < alpha < beta < 1");
    double x = (1.0 - g.beta) / (1.0 - g.alpha);
    double y = g.beta;
    return {x, y, region_of(x, y, tol)};
}

GcParams natural_to_gc(double x, double y, double tol) {
    require_valid(x, y, tol);
    if (std::fabs(x - 1.0) <= tol || std::fabs(y - 1.0) <= tol)
        throw NotApplicable("trapezoids have no gc-parametrization");
    if (x > 1.0 || y > 1.0)
        throw InvalidParams("natural_to_gc requires x < 1 and y < 1");
    return {(x + y - 1.0) / x, y};
}

GcParams gc_dual(const GcParams& g) {
    return {(1.0 - g.beta) * g.alpha / ((1.0 - g.alpha) * g.beta),
            (1.0 - g.beta) / (1.0 - g.alpha)};
}

}  // namespace selfaffine
