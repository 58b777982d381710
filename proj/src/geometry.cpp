#include "selfaffine/geometry.hpp"

#include <algorithm>

namespace selfaffine {

double segment_distance(Point2 p, Point2 a, Point2 b) {
    Point2 ab = b - a;
    double len2 = ab.norm2();
    if (len2 == 0.0) return distance(p, a);
    double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

AffineMap2 compose(const AffineMap2& f, const AffineMap2& g) {
    AffineMap2 r;
    r.a11 = f.a11 * g.a11 + f.a12 * g.a21;
    r.a12 = f.a11 * g.a12 + f.a12 * g.a22;
    r.a21 = f.a21 * g.a11 + f.a22 * g.a21;
    r.a22 = f.a21 * g.a12 + f.a22 * g.a22;
    Point2 t = f({g.a13, g.a23});
    r.a13 = t.x;
    r.a23 = t.y;
    return r;
}

AffineMap2 invert(const AffineMap2& f, double tol) {
    double d = f.det();
    if (std::fabs(d) < std::max(tol, 1e-12)) throw SingularMap("invert: |det| below tolerance");
    AffineMap2 r;
    r.a11 = f.a22 / d;
    r.a12 = -f.a12 / d;
    r.a21 = -f.a21 / d;
    r.a22 = f.a11 / d;
    r.a13 = -(r.a11 * f.a13 + r.a12 * f.a23);
    r.a23 = -(r.a21 * f.a13 + r.a22 * f.a23);
    return r;
}

std::optional<AffineMap2> try_affine_from_triples(const std::array<Point2, 3>& src,
                                                  const std::array<Point2, 3>& dst,
                                                  double tol) {
    Point2 u = src[1] - src[0];
    Point2 v = src[2] - src[0];
    double d = u.cross(v);
    double scale = std::max(u.norm() * v.norm(), 1e-300);
    if (std::fabs(d) / scale < tol) return std::nullopt;

    Point2 p = dst[1] - dst[0];
    Point2 q = dst[2] - dst[0];
    // L * u = p, L * v = q  =>  L = [p q] * [u v]^-1
    double inv = 1.0 / d;
    AffineMap2 m;
    m.a11 = (p.x * v.y - q.x * u.y) * inv;
    m.a12 = (q.x * u.x - p.x * v.x) * inv;
    m.a21 = (p.y * v.y - q.y * u.y) * inv;
    m.a22 = (q.y * u.x - p.y * v.x) * inv;
    m.a13 = dst[0].x - (m.a11 * src[0].x + m.a12 * src[0].y);
    m.a23 = dst[0].y - (m.a21 * src[0].x + m.a22 * src[0].y);
    return m;
}

AffineMap2 affine_from_triples(const std::array<Point2, 3>& src,
                               const std::array<Point2, 3>& dst, double tol) {
    auto m = try_affine_from_triples(src, dst, tol);
    if (!m) throw CollinearSource("affine_from_triples: source points are collinear");
    return *m;
}

double signed_polygon_area(const std::array<Point2, 4>& v) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += v[i].cross(v[(i + 1) % 4]);
    return 0.5 * s;
}

double polygon_area(const std::array<Point2, 4>& v) {
    return std::fabs(signed_polygon_area(v));
}

Point2 Quadrangle::centroid() const {
    double area2 = 0.0;
    Point2 acc{0.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % 4];
        double w = a.cross(b);
        area2 += w;
        acc = acc + (a + b) * w;
    }
    if (std::fabs(area2) < 1e-300) return (v[0] + v[1] + v[2] + v[3]) * 0.25;
    return acc * (1.0 / (3.0 * area2));
}

namespace {

// Normalized corner cross products: cross of the two edges meeting at each
// vertex, divided by the product of edge lengths (scale invariance).
std::array<double, 4> corner_crosses(const std::array<Point2, 4>& v) {
    std::array<double, 4> c{};
    for (int i = 0; i < 4; ++i) {
        Point2 prev = v[i] - v[(i + 3) % 4];
        Point2 next = v[(i + 1) % 4] - v[i];
        double scale = std::max(prev.norm() * next.norm(), 1e-300);
        c[i] = prev.cross(next) / scale;
    }
    return c;
}

}  // namespace

Quadrangle make_quadrangle(const std::array<Point2, 4>& v, double tol) {
    Quadrangle q;
    q.v = v;
    auto c = corner_crosses(v);

    for (double ci : c) {
        if (std::fabs(ci) < tol) {
            q.kind = QuadKind::Degenerate;
            return q;
        }
    }
    int neg = 0, pos = 0, odd = -1;
    for (int i = 0; i < 4; ++i) (c[i] > 0 ? pos : neg)++;
    if (pos == 4 || neg == 4) {
        q.kind = QuadKind::Convex;
        return q;
    }
    if (pos == 3 || neg == 3) {
        bool minority_negative = (neg == 1);
        for (int i = 0; i < 4; ++i)
            if ((c[i] < 0) == minority_negative) odd = i;
        q.kind = QuadKind::NonConvex;
        q.reflex = odd;
        return q;
    }
    // Two corners of each sign: the boundary self-intersects.
    q.kind = QuadKind::Degenerate;
    return q;
}

Quadrangle classify_quadrangle(const std::array<Point2, 4>& v, double tol) {
    Quadrangle q = make_quadrangle(v, tol);
    if (q.kind == QuadKind::Degenerate)
        throw DegenerateQuadrangle("classify_quadrangle: collinear or self-intersecting vertices");
    return q;
}

bool point_in_quadrangle(Point2 p, const std::array<Point2, 4>& quad, double tol) {
    for (int i = 0; i < 4; ++i)
        if (segment_distance(p, quad[i], quad[(i + 1) % 4]) <= tol) return true;
    // Crossing number; boundary cases already handled above.
    bool inside = false;
    for (int i = 0; i < 4; ++i) {
        Point2 a = quad[i], b = quad[(i + 1) % 4];
        if ((a.y > p.y) != (b.y > p.y)) {
            double xcross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xcross) inside = !inside;
        }
    }
    return inside;
}

bool point_strictly_inside(Point2 p, const std::array<Point2, 4>& quad, double tol) {
    for (int i = 0; i < 4; ++i)
        if (segment_distance(p, quad[i], quad[(i + 1) % 4]) <= tol) return false;
    return point_in_quadrangle(p, quad, 0.0);
}

bool segments_cross_properly(Point2 a, Point2 b, Point2 c, Point2 d, double tol) {
    double lab = std::max(distance(a, b), 1e-300);
    double lcd = std::max(distance(c, d), 1e-300);
    double o1 = orient(a, b, c) / (lab * lcd);
    double o2 = orient(a, b, d) / (lab * lcd);
    double o3 = orient(c, d, a) / (lab * lcd);
    double o4 = orient(c, d, b) / (lab * lcd);
    return (o1 > tol && o2 < -tol) || (o1 < -tol && o2 > tol)
               ? ((o3 > tol && o4 < -tol) || (o3 < -tol && o4 > tol))
               : false;
}

}  // namespace selfaffine
