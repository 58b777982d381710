#include "selfaffine/families.hpp"

#include <algorithm>
#include <cmath>

#include "selfaffine/linalg.hpp"
#include "selfaffine/roots.hpp"

namespace selfaffine {

std::string to_string(FamilyName f) {
    switch (f) {
        case FamilyName::T: return "T";
        case FamilyName::A: return "A";
        case FamilyName::B1: return "B1";
        case FamilyName::B2: return "B2";
        case FamilyName::C: return "C";
    }
    return "?";
}

std::optional<FamilyName> family_from_string(const std::string& s) {
    if (s == "T" || s == "t") return FamilyName::T;
    if (s == "A" || s == "a") return FamilyName::A;
    if (s == "B1" || s == "b1") return FamilyName::B1;
    if (s == "B2" || s == "b2") return FamilyName::B2;
    if (s == "C" || s == "c") return FamilyName::C;
    return std::nullopt;
}

bool FamilyCurve::in_domain(double x, double y, double tol) const {
    switch (name) {
        case FamilyName::T:
            return x > tol && x <= 1.0 + tol;
        case FamilyName::C:
            return x > tol && x < 1.0 - tol;
        default:
            return x + y > 1.0 + tol && y < 1.0 - tol && x < y + tol && x > tol;
    }
}

namespace {

std::vector<FamilyCurve> build_family_curves() {
    std::vector<FamilyCurve> v;
    // T: y - 1 = 0 on 0 < x <= 1.
    v.push_back({FamilyName::T, Poly2{{0, 1, 1}, {0, 0, -1}}});
    // A: y^3 + x*y^2 - x^2 - y^2 = 0.
    v.push_back({FamilyName::A, Poly2{{0, 3, 1}, {1, 2, 1}, {2, 0, -1}, {0, 2, -1}}});
    // B1: (x+1)y^2 - (x+1)y + x(1-x) = 0.
    v.push_back({FamilyName::B1,
                 Poly2{{1, 2, 1}, {0, 2, 1}, {1, 1, -1}, {0, 1, -1}, {1, 0, 1}, {2, 0, -1}}});
    // B2: x^3 + (-y^2+y-2)x^2 + (-y^3+2y^2-y+1)x + y^2 - y = 0.
    v.push_back({FamilyName::B2,
                 Poly2{{3, 0, 1},
                       {2, 2, -1},
                       {2, 1, 1},
                       {2, 0, -2},
                       {1, 3, -1},
                       {1, 2, 2},
                       {1, 1, -1},
                       {1, 0, 1},
                       {0, 2, 1},
                       {0, 1, -1}}});
    // C: y - (x^2 - x + 1) = 0 on 0 < x < 1.
    v.push_back({FamilyName::C, Poly2{{0, 1, 1}, {2, 0, -1}, {1, 0, 1}, {0, 0, -1}}});
    return v;
}

}  // namespace

const std::vector<FamilyCurve>& all_family_curves() {
    static const std::vector<FamilyCurve> curves = build_family_curves();
    return curves;
}

const FamilyCurve& family_curve(FamilyName name) {
    for (const auto& c : all_family_curves())
        if (c.name == name) return c;
    throw InvalidParams("unknown family");
}

double curve_residual(const FamilyCurve& curve, double x, double y) {
    return curve.polynomial.eval(x, y);
}

double curve_distance(const FamilyCurve& curve, double x, double y) {
    double r = curve.polynomial.eval(x, y);
    double gx = curve.polynomial.dx().eval(x, y);
    double gy = curve.polynomial.dy().eval(x, y);
    double g = std::sqrt(gx * gx + gy * gy);
    return std::fabs(r) / std::max(g, 1e-12);
}

std::optional<Point2> newton2(const Poly2& p, const Poly2& q, Point2 seed,
                              double residual_target, int max_iters) {
    Poly2 px = p.dx(), py = p.dy(), qx = q.dx(), qy = q.dy();
    Point2 u = seed;
    for (int it = 0; it < max_iters; ++it) {
        double f1 = p.eval(u.x, u.y);
        double f2 = q.eval(u.x, u.y);
        double res = std::sqrt(f1 * f1 + f2 * f2);
        if (res < residual_target) return u;
        std::array<std::array<double, 2>, 2> jac{
            {{px.eval(u.x, u.y), py.eval(u.x, u.y)}, {qx.eval(u.x, u.y), qy.eval(u.x, u.y)}}};
        std::array<double, 2> rhs{-f1, -f2};
        std::array<double, 2> step{};
        if (!linalg::solve<2>(jac, rhs, step)) return std::nullopt;
        u.x += step[0];
        u.y += step[1];
        if (!std::isfinite(u.x) || !std::isfinite(u.y)) return std::nullopt;
    }
    double f1 = p.eval(u.x, u.y), f2 = q.eval(u.x, u.y);
    if (std::sqrt(f1 * f1 + f2 * f2) < residual_target) return u;
    return std::nullopt;
}

namespace {

struct Table1Row {
    int id;
    Poly2 eq1, eq2;
    Point2 seed;
    std::string closed_form;
    std::optional<Point2> closed_value;
};

std::vector<Table1Row> table1_rows() {
    const double r2 = std::sqrt(2.0);
    const double r17 = std::sqrt(17.0);
    std::vector<Table1Row> rows;
    rows.push_back({1,
                    Poly2{{3, 1, 1}, {1, 1, -1}, {0, 2, 1}, {1, 0, -1}, {0, 1, -1}, {0, 0, 1}},
                    Poly2{{2, 2, 1}, {3, 0, 1}, {1, 2, -1}, {2, 0, -2}, {1, 1, -1}, {0, 2, -1},
                          {1, 0, 2}, {0, 1, 2}, {0, 0, -1}},
                    {0.54368, 0.83928}, "", std::nullopt});
    rows.push_back({2,
                    Poly2{{3, 1, 1}, {2, 2, 1}, {2, 1, -1}, {1, 2, -1}, {1, 0, -1}, {0, 1, 1}},
                    Poly2{{3, 1, 1}, {2, 2, 1}, {2, 1, -1}, {1, 2, -2}, {0, 3, -1}, {2, 0, -1},
                          {1, 1, 1}, {0, 2, 2}, {1, 0, 1}, {0, 1, -1}},
                    {0.55706, 0.85490}, "", std::nullopt});
    rows.push_back({3,
                    Poly2{{3, 1, 1}, {2, 2, 1}, {2, 1, -1}, {1, 2, 1}, {2, 0, -1}, {1, 1, -2},
                          {0, 2, -1}, {1, 0, 1}, {0, 1, 1}},
                    Poly2{{3, 1, 1}, {2, 2, 1}, {3, 0, -1}, {2, 1, -4}, {1, 2, -1}, {2, 0, 2},
                          {1, 1, 3}, {0, 2, 1}, {1, 0, -1}, {0, 1, -1}},
                    {0.54660, 0.72669}, "", std::nullopt});
    rows.push_back({4,
                    Poly2{{2, 2, 1}, {1, 3, 1}, {2, 1, 1}, {1, 2, -1}, {2, 0, -1}, {1, 1, -2},
                          {0, 2, -1}, {1, 0, 1}, {0, 1, 1}},
                    Poly2{{4, 0, 1}, {3, 1, 1}, {3, 0, -3}, {2, 1, -2}, {1, 2, -1}, {2, 0, 2},
                          {1, 1, 3}, {0, 2, 1}, {1, 0, -1}, {0, 1, -1}},
                    {0.50678, 0.67567}, "", std::nullopt});
    rows.push_back({5,
                    Poly2{{3, 1, 1}, {2, 2, 2}, {1, 3, 1}, {2, 1, -2}, {1, 2, -3}, {0, 3, -1},
                          {2, 0, -1}, {1, 1, 2}, {0, 2, 1}},
                    Poly2{{3, 1, 1}, {2, 2, 2}, {1, 3, 1}, {3, 0, -1}, {2, 1, -3}, {1, 2, -3},
                          {0, 3, -1}, {2, 0, 2}, {1, 1, 1}, {0, 2, 1}},
                    {0.47759, 0.81530}, "((9-4*sqrt(2))/7; (10+sqrt(2))/14)",
                    Point2{(9.0 - 4.0 * r2) / 7.0, (10.0 + r2) / 14.0}});
    rows.push_back({6,
                    Poly2{{2, 2, 1}, {1, 3, 1}, {1, 2, -1}, {0, 3, -1}, {1, 0, -1}, {0, 1, 1}},
                    Poly2{{2, 2, 1}, {1, 3, 1}, {3, 0, 1}, {2, 1, -1}, {1, 2, -3}, {0, 3, -1},
                          {2, 0, -1}, {1, 1, 1}, {0, 2, 2}, {1, 0, 1}, {0, 1, -1}},
                    {0.25805, 0.84781}, "", std::nullopt});
    rows.push_back({7,
                    Poly2{{3, 0, 1}, {2, 1, 1}, {2, 0, -1}, {0, 2, 1}, {1, 0, -2}, {0, 1, -2},
                          {0, 0, 2}},
                    Poly2{{1, 2, 1}, {0, 3, 1}, {2, 0, -1}, {1, 1, -3}, {0, 2, -2}, {1, 0, 3},
                          {0, 1, 3}, {0, 0, -2}},
                    {0.58750, 0.78257}, "", std::nullopt});
    rows.push_back({8,
                    Poly2{{2, 1, 1}, {1, 2, 1}, {2, 0, -2}, {1, 1, -3}, {0, 2, -1}, {1, 0, 3},
                          {0, 1, 3}, {0, 0, -2}},
                    Poly2{{2, 1, 1}, {1, 2, 1}, {1, 0, -2}, {0, 1, -2}, {0, 0, 2}},
                    {0.5, 0.71922}, "(1/2; (7-sqrt(17))/4)",
                    Point2{0.5, (7.0 - r17) / 4.0}});
    rows.push_back({9,
                    Poly2{{2, 1, 1}, {1, 2, 2}, {0, 3, 1}, {1, 1, -4}, {0, 2, -4}, {1, 0, 1},
                          {0, 1, 3}},
                    Poly2{{2, 0, 1}, {1, 1, 1}, {0, 1, -1}},
                    {0.59100, 0.85403}, "", std::nullopt});
    rows.push_back({10,
                    Poly2{{2, 1, 1}, {0, 3, 1}, {1, 1, -2}, {0, 2, -2}, {1, 0, 1}, {0, 1, 1}},
                    Poly2{{3, 0, 1}, {2, 1, 1}, {1, 2, 2}, {2, 0, -2}, {1, 1, -3}, {0, 2, -1},
                          {1, 0, 1}, {0, 1, 1}},
                    {0.41803, 0.71831}, "", std::nullopt});
    rows.push_back({11,
                    Poly2{{1, 3, 1}, {2, 1, 1}, {0, 3, -1}, {1, 1, -1}, {0, 2, 1}, {1, 0, -1},
                          {0, 1, -1}, {0, 0, 1}},
                    Poly2{{3, 1, 1}, {2, 2, -1}, {1, 3, -1}, {3, 0, -2}, {1, 2, 2}, {2, 0, 2},
                          {1, 1, 1}, {0, 2, 1}, {1, 0, -2}, {0, 1, -2}, {0, 0, 1}},
                    {0.33133, 0.78783}, "", std::nullopt});
    rows.push_back({12,
                    Poly2{{1, 2, 2}, {1, 1, -2}, {0, 2, -2}, {1, 0, 1}, {0, 1, 1}},
                    Poly2{{2, 1, 3}, {1, 2, 1}, {2, 0, -2}, {1, 1, -3}, {0, 2, -1}, {1, 0, 1},
                          {0, 1, 1}},
                    {0.4, 0.66666}, "(2/5; 2/3)", Point2{0.4, 2.0 / 3.0}});
    rows.push_back({13,
                    Poly2{{0, 4, 1}, {2, 1, 1}, {0, 3, -1}, {1, 1, -1}, {0, 2, 1}, {1, 0, -1},
                          {0, 1, -1}, {0, 0, 1}},
                    Poly2{{4, 0, 1}, {2, 2, -1}, {1, 3, -1}, {3, 0, -2}, {1, 2, 2}, {2, 0, 2},
                          {1, 1, 1}, {0, 2, 1}, {1, 0, -2}, {0, 1, -2}, {0, 0, 1}},
                    {0.59717, 0.87586}, "", std::nullopt});
    return rows;
}

std::vector<SingularSolution> refine_table1() {
    std::vector<SingularSolution> out;
    for (const auto& row : table1_rows()) {
        auto refined = newton2(row.eq1, row.eq2, row.seed, 1e-13, 100);
        if (!refined)
            throw ConvergenceFailure("table1 row " + std::to_string(row.id) +
                                     ": Newton refinement failed");
        // A couple of polishing steps push the residual to machine level.
        for (int i = 0; i < 3; ++i) {
            auto p = newton2(row.eq1, row.eq2, *refined, 0.0, 1);
            if (p) refined = p;
        }
        SingularSolution s;
        s.id = row.id;
        s.eq1 = row.eq1;
        s.eq2 = row.eq2;
        s.seed = row.seed;
        s.value = *refined;
        s.closed_form = row.closed_form;
        s.closed_value = row.closed_value;
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

const std::vector<SingularSolution>& table1_solutions() {
    static const std::vector<SingularSolution> rows = refine_table1();
    return rows;
}

Point2 special_point() {
    static const Point2 p = [] {
        auto roots = find_roots_scan_bisect(
            [](double x) { return ((x - 2.0) * x + 3.0) * x - 1.0; }, 0.0, 1.0, 10000, 1e-15);
        double x = roots.at(0);
        return Point2{x, x * x - x + 1.0};
    }();
    return p;
}

Membership is_member(double x, double y, double tol) {
    auto canon = normalize_to_P(x, y).params;
    Membership m;
    for (const auto& curve : all_family_curves()) {
        if (curve_distance(curve, canon.x, canon.y) < tol &&
            curve.in_domain(canon.x, canon.y))
            m.families.push_back(curve.name);
    }
    for (const auto& s : table1_solutions()) {
        if (distance({canon.x, canon.y}, s.value) < tol) m.singular_ids.push_back(s.id);
    }
    if (distance({canon.x, canon.y}, special_point()) < std::max(tol, 2e-5)) m.special = true;
    return m;
}

std::vector<double> curve_roots_at_x(FamilyName name, double x) {
    const auto& curve = family_curve(name);
    if (name == FamilyName::T) {
        if (curve.in_domain(x, 1.0)) return {1.0};
        return {};
    }
    auto roots = find_roots_scan_bisect(
        [&](double y) { return curve.polynomial.eval(x, y); }, 0.0, 1.0, 4000, 1e-15);
    std::vector<double> valid;
    for (double y : roots)
        if (curve.in_domain(x, y)) valid.push_back(y);
    return valid;
}

std::vector<Point2> sample_curve(FamilyName name, int n) {
    std::vector<Point2> pts;
    if (n < 1) return pts;
    for (int i = 1; i <= n; ++i) {
        double x = static_cast<double>(i) / (n + 1);
        for (double y : curve_roots_at_x(name, x)) pts.push_back({x, y});
    }
    return pts;
}

}  // namespace selfaffine
