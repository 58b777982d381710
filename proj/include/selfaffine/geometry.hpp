#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "selfaffine/errors.hpp"

namespace selfaffine {

/// Default geometric tolerance. All boundary and degeneracy decisions are
/// taken relative to this unless a caller passes its own.
inline constexpr double kDefaultTol = 1e-9;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Point2 operator+(Point2 p) const { return {x + p.x, y + p.y}; }
    constexpr Point2 operator-(Point2 p) const { return {x - p.x, y - p.y}; }
    constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Point2 operator-() const { return {-x, -y}; }

    constexpr double dot(Point2 p) const { return x * p.x + y * p.y; }
    constexpr double cross(Point2 p) const { return x * p.y - y * p.x; }
    double norm() const { return std::sqrt(x * x + y * y); }
    constexpr double norm2() const { return x * x + y * y; }
};

constexpr Point2 operator*(double s, Point2 p) { return p * s; }

inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }

/// Signed area of the triangle abc (positive for counter-clockwise).
inline double orient(Point2 a, Point2 b, Point2 c) { return (b - a).cross(c - a); }

/// Distance from p to the closed segment ab.
double segment_distance(Point2 p, Point2 a, Point2 b);

/// Invertible planar affine map: p -> [[a11 a12],[a21 a22]] p + (a13, a23).
struct AffineMap2 {
    double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;
    double a13 = 0.0, a23 = 0.0;

    static AffineMap2 identity() { return {}; }

    constexpr Point2 operator()(Point2 p) const {
        return {a11 * p.x + a12 * p.y + a13, a21 * p.x + a22 * p.y + a23};
    }

    constexpr double det() const { return a11 * a22 - a12 * a21; }
};

inline Point2 apply(const AffineMap2& m, Point2 p) { return m(p); }

/// compose(f, g)(p) == f(g(p)).
AffineMap2 compose(const AffineMap2& f, const AffineMap2& g);

/// Throws SingularMap when |det| < tol.
AffineMap2 invert(const AffineMap2& f, double tol = kDefaultTol);

/// Unique affine map sending src[i] to dst[i]. Throws CollinearSource when
/// the source triangle is degenerate (area test is scale-invariant).
AffineMap2 affine_from_triples(const std::array<Point2, 3>& src,
                               const std::array<Point2, 3>& dst,
                               double tol = kDefaultTol);

/// Non-throwing variant used in solver inner loops.
std::optional<AffineMap2> try_affine_from_triples(const std::array<Point2, 3>& src,
                                                  const std::array<Point2, 3>& dst,
                                                  double tol = kDefaultTol);

enum class QuadKind { Convex, NonConvex, Degenerate };

/// Four ordered vertices with a convexity classification. Vertices are kept
/// exactly in the order given; canonicalization is a separate concern.
struct Quadrangle {
    std::array<Point2, 4> v{};
    QuadKind kind = QuadKind::Degenerate;
    int reflex = -1;  // 0-based index of the reflex vertex, -1 if none

    /// Area centroid; interior for every simple quadrangle (the vertex
    /// average is not, once a reflex vertex appears).
    Point2 centroid() const;
};

/// Absolute polygon area (shoelace) of the ordered vertex list.
double polygon_area(const std::array<Point2, 4>& v);
double signed_polygon_area(const std::array<Point2, 4>& v);

/// Classification without error reporting; never throws.
Quadrangle make_quadrangle(const std::array<Point2, 4>& v, double tol = kDefaultTol);

/// Strict classifier: throws DegenerateQuadrangle when three consecutive
/// vertices are collinear (normalized cross below tol) or when the boundary
/// self-intersects.
Quadrangle classify_quadrangle(const std::array<Point2, 4>& v, double tol = kDefaultTol);

/// True if p is inside the simple polygon (boundary counts as inside when
/// within tol).
bool point_in_quadrangle(Point2 p, const std::array<Point2, 4>& quad, double tol = kDefaultTol);

/// True if p is strictly interior: inside and further than tol from every edge.
bool point_strictly_inside(Point2 p, const std::array<Point2, 4>& quad, double tol = kDefaultTol);

/// Proper (transversal, interior) crossing test for segments ab and cd.
/// Collinear overlaps and shared endpoints do not count.
bool segments_cross_properly(Point2 a, Point2 b, Point2 c, Point2 d, double tol = kDefaultTol);

}  // namespace selfaffine
