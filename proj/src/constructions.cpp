#include "selfaffine/constructions.hpp"

#include <cmath>

#include "selfaffine/roots.hpp"

namespace selfaffine {

namespace {

void require_trapezoid_ratio(double z, double tol, bool allow_one) {
    double hi = allow_one ? 1.0 + tol : 1.0 - tol;
    if (!(z > tol && z <= hi)) throw InvalidParams("trapezoid ratio z out of range");
}

void require_nonconvex(double x, double y, double tol) {
    if (!(x > tol && y > tol && x + y < 1.0 - tol))
        throw InvalidParams("nonconvex params must satisfy x, y > 0 and x + y < 1");
}

DissectionPiece make_piece(const std::array<Point2, 4>& verts, const AffineMap2& m,
                           const std::string& corr, double tol) {
    DissectionPiece p;
    p.quad = make_quadrangle(verts, tol);
    p.map = m;
    p.corr = VertexCorrespondence::from_string(corr);
    return p;
}

}  // namespace

Quadrangle standard_trapezoid(double z) {
    return make_quadrangle({{{0, 0}, {1, 0}, {z, 1}, {0, 1}}});
}

Dissection trapezoid_A(double z, const std::array<double, 3>& weights, double tol) {
    require_trapezoid_ratio(z, tol, true);
    double sum = weights[0] + weights[1] + weights[2];
    for (double w : weights)
        if (w <= tol) throw InvalidWeights("weights must be positive");
    if (std::fabs(sum - 1.0) > 1e-9) throw InvalidWeights("weights must sum to 1");

    Dissection d;
    d.parent = standard_trapezoid(z);
    d.ctype = CombinatorialType::A;
    double c0 = 0.0;
    for (int i = 0; i < 3; ++i) {
        double c1 = c0 + weights[i];
        AffineMap2 m{weights[i], z * c0 - c0, 0.0, 1.0, c0, 0.0};
        std::array<Point2, 4> verts{{{c0, 0}, {c1, 0}, {z * c1, 1}, {z * c0, 1}}};
        d.pieces.push_back(make_piece(verts, m, "1234", tol));
        c0 = c1;
    }
    return d;
}

double trapezoid_B_zeta(double z) { return z / (1.0 + z + z * z); }

Dissection trapezoid_B(double z, double tol) {
    require_trapezoid_ratio(z, tol, true);
    double zeta = trapezoid_B_zeta(z);
    double h = (1.0 - z * zeta) / (1.0 + zeta);
    Point2 P{z * zeta + h * (zeta - z * zeta), h};
    Point2 R{1.0 + h * (z - 1.0), h};

    Dissection d;
    d.parent = standard_trapezoid(z);
    d.ctype = CombinatorialType::B;

    // Left piece, rotated by the half turn.
    AffineMap2 left{-zeta, zeta * (z - 1.0), 0.0, -1.0, zeta, 1.0};
    d.pieces.push_back(make_piece({{{0, 0}, {z * zeta, 0}, {zeta, 1}, {0, 1}}}, left, "3412", tol));

    AffineMap2 lower{1.0 - z * zeta, h * (zeta - z * zeta), 0.0, h, z * zeta, 0.0};
    d.pieces.push_back(make_piece({{{z * zeta, 0}, {1, 0}, R, P}}, lower, "1234", tol));

    AffineMap2 upper{z * (1.0 - z * zeta), (zeta - z * zeta) * (1.0 - h), 0.0, 1.0 - h, P.x, P.y};
    d.pieces.push_back(make_piece({{P, R, {z, 1}, {zeta, 1}}}, upper, "1234", tol));
    return d;
}

Dissection trapezoid_C(double z, double tol) {
    if (z >= 1.0 - std::max(tol, 1e-6))
        throw ParallelogramExcluded("type-C needs a non-parallelogram: z < 1");
    require_trapezoid_ratio(z, tol, false);

    Dissection d;
    d.parent = standard_trapezoid(z);
    d.ctype = CombinatorialType::C;

    AffineMap2 dilation{z, 0.0, 0.0, z, 0.0, 0.0};
    d.pieces.push_back(
        make_piece({{{0, 0}, {z, 0}, {z * z, z}, {0, z}}}, dilation, "1234", tol));

    AffineMap2 right{z - 1.0, z - 1.0, 1.0, 0.0, 1.0, 0.0};
    d.pieces.push_back(
        make_piece({{{z, 0}, {1, 0}, {z, 1}, {z * z, z}}}, right, "2341", tol));

    AffineMap2 top{-z, z * z - z, 0.0, z - 1.0, z, 1.0};
    d.pieces.push_back(
        make_piece({{{0, z}, {z * z, z}, {z, 1}, {0, 1}}}, top, "3412", tol));
    return d;
}

Quadrangle nonconvex_quadrangle(double x, double y, double tol) {
    require_nonconvex(x, y, tol);
    return make_quadrangle({{{0, 1}, {0, 0}, {1, 0}, {x, y}}});
}

AffineMap2 nonconvex_chain_map(double x, double y) {
    return {1.0 - x, -x, -y, 1.0 - y, x, y};
}

double chain_factor(double x, double y, int m) {
    double s = x + y;
    double pw = 1.0;
    for (int i = 0; i < m; ++i) pw *= (1.0 - s);
    return (1.0 - pw) / s;
}

Dissection nonconvex_chain(double x, double y, int k, double tol) {
    require_nonconvex(x, y, tol);
    if (k < 1) throw InvalidParams("chain length must be at least 1");

    Quadrangle unit = nonconvex_quadrangle(x, y, tol);
    double ck = chain_factor(x, y, k);

    Dissection d;
    d.parent = make_quadrangle({{{0, 1}, {0, 0}, {1, 0}, {ck * x, ck * y}}}, tol);
    if (k >= 2) d.source_override = unit;
    d.ctype = CombinatorialType::Other;

    AffineMap2 alpha = nonconvex_chain_map(x, y);
    AffineMap2 m = AffineMap2::identity();
    for (int i = 0; i < k; ++i) {
        std::array<Point2, 4> verts{};
        for (int j = 0; j < 4; ++j) verts[j] = m(unit.v[j]);
        d.pieces.push_back(make_piece(verts, m, "1234", tol));
        m = compose(alpha, m);
    }
    return d;
}

SplitResult nonconvex_split(double x, double y, double tol) {
    require_nonconvex(x, y, tol);
    AffineMap2 beta{x, 0.0, y - 1.0, -1.0, 0.0, 1.0};
    Quadrangle unit = nonconvex_quadrangle(x, y, tol);
    std::array<Point2, 4> piece_verts{};
    for (int j = 0; j < 4; ++j) piece_verts[j] = beta(unit.v[j]);
    SplitResult r;
    r.piece = make_quadrangle(piece_verts, tol);
    r.map = beta;
    r.remainder = make_quadrangle(
        {{{0, 0}, {1, 0}, {x, y}, {x * x, (1.0 - x) * (1.0 - y)}}}, tol);
    return r;
}

double f_n(int n, double x) {
    double pw = 1.0;
    for (int i = 0; i < 2 * n - 2; ++i) pw *= (1.0 - x);
    return (1.0 - pw) * (1.0 - x + x * x) - x * (2.0 - x);
}

std::vector<double> solve_f_n(int n) {
    if (n < 3) throw InvalidParams("solve_f_n requires n >= 3");
    return find_roots_scan_bisect([n](double x) { return f_n(n, x); }, 0.0, 1.0, 10000, 1e-14);
}

AffineMap2 nonconvex_assembly_map(double x0) {
    return {x0 * x0, 1.0, (1.0 - x0) * (1.0 - x0 + x0 * x0), 0.0, 0.0, 0.0};
}

double assembly_closure_residual(int n, double x0) {
    double y0 = x0 * (1.0 - x0);
    double c = chain_factor(x0, y0, n - 1);
    AffineMap2 gamma = nonconvex_assembly_map(x0);
    Point2 image = gamma({c * x0, c * y0});
    return distance(image, {x0, y0});
}

Dissection nonconvex_n_self_affine(int n, double tol) {
    auto roots = solve_f_n(n);
    if (roots.empty()) throw ConvergenceFailure("f_n has no root in (0,1)");
    double x0 = roots.front();
    double y0 = x0 * (1.0 - x0);

    Quadrangle unit = nonconvex_quadrangle(x0, y0, tol);
    Dissection d;
    d.parent = unit;
    d.ctype = CombinatorialType::Other;

    AffineMap2 beta{x0, 0.0, y0 - 1.0, -1.0, 0.0, 1.0};
    std::array<Point2, 4> bv{};
    for (int j = 0; j < 4; ++j) bv[j] = beta(unit.v[j]);
    d.pieces.push_back(make_piece(bv, beta, "1234", tol));

    AffineMap2 alpha = nonconvex_chain_map(x0, y0);
    AffineMap2 gamma = nonconvex_assembly_map(x0);
    AffineMap2 m = gamma;
    for (int i = 0; i < n - 1; ++i) {
        std::array<Point2, 4> verts{};
        for (int j = 0; j < 4; ++j) verts[j] = m(unit.v[j]);
        d.pieces.push_back(make_piece(verts, m, "1234", tol));
        m = compose(m, alpha);
    }
    return d;
}

double diagonal_invariant(const Quadrangle& q, double tol) {
    if (q.kind != QuadKind::NonConvex || q.reflex < 0)
        throw InvalidParams("diagonal_invariant needs a non-convex quadrangle");
    int r = q.reflex;
    Point2 v3 = q.v[r];                 // reflex vertex
    Point2 v1 = q.v[(r + 2) % 4];       // opposite vertex
    Point2 v2 = q.v[(r + 3) % 4];       // outer diagonal endpoints
    Point2 v4 = q.v[(r + 1) % 4];

    Point2 dir = v3 - v1;
    Point2 seg = v4 - v2;
    double denom = dir.cross(seg);
    double scale = std::max(dir.norm() * seg.norm(), 1e-300);
    if (std::fabs(denom) / scale < tol)
        throw DegenerateDiagonals("inner diagonal is parallel to the outer diagonal");
    // v1 + t*dir = v2 + s*seg
    double t = (v2 - v1).cross(seg) / denom;
    Point2 d_point = v1 + dir * t;
    double denom_len = distance(v1, d_point);
    if (denom_len < tol) throw DegenerateDiagonals("diagonal intersection collapses");
    return distance(v1, v3) / denom_len;
}

}  // namespace selfaffine
