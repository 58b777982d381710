#include "selfaffine/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "selfaffine/affine_type.hpp"
#include "selfaffine/linalg.hpp"
#include "selfaffine/rng.hpp"

namespace selfaffine {

std::string to_string(TemplateKind t) {
    switch (t) {
        case TemplateKind::C: return "C";
        case TemplateKind::A: return "A";
        case TemplateKind::B: return "B";
    }
    return "?";
}

std::optional<TemplateKind> template_from_string(const std::string& s) {
    if (s == "C" || s == "c") return TemplateKind::C;
    if (s == "A" || s == "a") return TemplateKind::A;
    if (s == "B" || s == "b") return TemplateKind::B;
    return std::nullopt;
}

int template_variant_count(TemplateKind t) {
    switch (t) {
        case TemplateKind::C: return 1;
        case TemplateKind::A: return 2;
        case TemplateKind::B: return 4;
    }
    return 0;
}

PermutationTriple PermutationTriple::from_index(int idx) {
    const auto& all = VertexCorrespondence::all();
    PermutationTriple t;
    t.pi_a = all[(idx >> 6) & 7];
    t.pi_b = all[(idx >> 3) & 7];
    t.pi_c = all[idx & 7];
    return t;
}

int PermutationTriple::index() const {
    const auto& all = VertexCorrespondence::all();
    int ia = 0, ib = 0, ic = 0;
    for (int i = 0; i < 8; ++i) {
        if (all[i] == pi_a) ia = i;
        if (all[i] == pi_b) ib = i;
        if (all[i] == pi_c) ic = i;
    }
    return (ia << 6) | (ib << 3) | ic;
}

std::string PermutationTriple::to_string() const {
    return pi_a.to_string() + "," + pi_b.to_string() + "," + pi_c.to_string();
}

std::optional<PermutationTriple> PermutationTriple::from_string(const std::string& s) {
    if (s.size() != 14 || s[4] != ',' || s[9] != ',') return std::nullopt;
    try {
        PermutationTriple t;
        t.pi_a = VertexCorrespondence::from_string(s.substr(0, 4));
        t.pi_b = VertexCorrespondence::from_string(s.substr(5, 4));
        t.pi_c = VertexCorrespondence::from_string(s.substr(10, 4));
        return t;
    } catch (const Error&) {
        return std::nullopt;
    }
}

namespace {

PermutationTriple triple_of(const char* a, const char* b, const char* c) {
    PermutationTriple t;
    t.pi_a = VertexCorrespondence::from_string(a);
    t.pi_b = VertexCorrespondence::from_string(b);
    t.pi_c = VertexCorrespondence::from_string(c);
    return t;
}

}  // namespace

const std::vector<PermutationTriple>& family_triples() {
    static const std::vector<PermutationTriple> v = {
        triple_of("1432", "1234", "4321"), triple_of("1432", "3214", "2341"),
        triple_of("3214", "1234", "1432"), triple_of("3214", "4123", "2143"),
        triple_of("3214", "2143", "4123"), triple_of("3214", "3214", "3412"),
    };
    return v;
}

const std::vector<PermutationTriple>& singular_triples() {
    static const std::vector<PermutationTriple> v = {
        triple_of("2341", "1234", "1234"), triple_of("2341", "1234", "2143"),
        triple_of("2341", "2341", "1234"), triple_of("2341", "2341", "1432"),
        triple_of("2341", "2341", "2143"), triple_of("2341", "1432", "2143"),
        triple_of("2341", "2143", "1234"), triple_of("2341", "2143", "1432"),
        triple_of("2341", "2143", "2143"), triple_of("4123", "1234", "4321"),
        triple_of("4123", "3214", "1432"), triple_of("4123", "3214", "4321"),
        triple_of("2143", "1234", "3412"), triple_of("2143", "2341", "1432"),
        triple_of("2143", "2143", "3412"),
    };
    return v;
}

bool ReducedSystem::piece_vertices(const Vec6& u,
                                   std::array<std::array<Point2, 4>, 3>& out) const {
    double x = u[0], y = u[1];
    if (!(std::fabs(y) > 1e-8)) return false;
    const Point2 q1{0, 0}, q2{1, 0}, q3{x, y}, q4{0, 1};
    auto top = [&](double w) { return Point2{w * x, 1.0 - w + w * y}; };
    auto right = [&](double a) { return Point2{1.0 + a * (x - 1.0), a * y}; };

    switch (tmpl) {
        case TemplateKind::C: {
            double s = u[2], t = u[3], m = u[4], n = u[5];
            Point2 mp{m, 0}, np{0, n}, st{s, t};
            out[0] = {q1, mp, st, np};
            out[1] = {q2, q3, st, mp};
            out[2] = {q4, np, st, q3};
            return true;
        }
        case TemplateKind::A: {
            if (variant == 0) {
                double p1 = u[2], p2 = u[3], w1 = u[4], w2 = u[5];
                Point2 t1 = top(w1), t2 = top(w2);
                Point2 f1{p1, 0}, f2{p2, 0};
                out[0] = {q1, f1, t1, q4};
                out[1] = {f1, f2, t2, t1};
                out[2] = {f2, q2, q3, t2};
            } else {
                double a1 = u[2], a2 = u[3], b1 = u[4], b2 = u[5];
                Point2 r1 = right(a1), r2 = right(a2);
                Point2 l1{0, b1}, l2{0, b2};
                out[0] = {q1, q2, r1, l1};
                out[1] = {l1, r1, r2, l2};
                out[2] = {l2, r2, q3, q4};
            }
            return true;
        }
        case TemplateKind::B: {
            if (variant == 0 || variant == 1) {
                double p = u[2], w = u[3], v = u[4], e = u[5];
                Point2 t = top(w);
                Point2 foot{p, 0};
                Point2 s = foot + (t - foot) * v;
                if (variant == 0) {
                    Point2 r = right(e);
                    out[0] = {q1, foot, t, q4};
                    out[1] = {foot, q2, r, s};
                    out[2] = {s, r, q3, t};
                } else {
                    Point2 l{0, e};
                    out[0] = {foot, q2, q3, t};
                    out[1] = {q1, foot, s, l};
                    out[2] = {l, s, t, q4};
                }
            } else {
                double lpos = u[2], rpos = u[3], v = u[4], e = u[5];
                Point2 l{0, lpos};
                Point2 r = right(rpos);
                Point2 s = l + (r - l) * v;
                if (variant == 2) {
                    Point2 foot{e, 0};
                    out[0] = {l, r, q3, q4};
                    out[1] = {q1, foot, s, l};
                    out[2] = {foot, q2, r, s};
                } else {
                    Point2 t = top(e);
                    out[0] = {q1, q2, r, l};
                    out[1] = {s, r, q3, t};
                    out[2] = {l, s, t, q4};
                }
            }
            return true;
        }
    }
    return false;
}

bool ReducedSystem::residual(const Vec6& u, Vec6& out) const {
    std::array<std::array<Point2, 4>, 3> pieces{};
    if (!piece_vertices(u, pieces)) return false;
    double x = u[0], y = u[1];
    const std::array<const VertexCorrespondence*, 3> corr = {&triple.pi_a, &triple.pi_b,
                                                             &triple.pi_c};
    for (int k = 0; k < 3; ++k) {
        const auto& p = pieces[k];
        const auto& pi = *corr[k];
        Point2 d0 = p[pi(0)], d1 = p[pi(1)], d2 = p[pi(2)], d3 = p[pi(3)];
        // Map fitted on (0,0),(1,0),(x,y); the image of (0,1) is d0 + col2.
        Point2 col2 = (d2 - d0 - (d1 - d0) * x) * (1.0 / y);
        Point2 r = d0 + col2 - d3;
        out[2 * k] = r.x;
        out[2 * k + 1] = r.y;
    }
    return true;
}

double ReducedSystem::residual_norm(const Vec6& u) const {
    Vec6 r{};
    if (!residual(u, r)) return 1e300;
    double s = 0.0;
    for (double c : r) s += c * c;
    return std::sqrt(s);
}

ReducedSystem build_system(TemplateKind tmpl, int variant, const PermutationTriple& triple) {
    if (variant < 0 || variant >= template_variant_count(tmpl))
        throw InvalidParams("template variant out of range");
    ReducedSystem s;
    s.tmpl = tmpl;
    s.variant = variant;
    s.triple = triple;
    return s;
}

namespace {

using Vec6 = ReducedSystem::Vec6;
using Mat6 = std::array<std::array<double, 6>, 6>;

double norm6(const Vec6& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

double dist_inf(const Vec6& a, const Vec6& b) {
    double m = 0.0;
    for (int i = 0; i < 6; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

bool fd_jacobian(const ReducedSystem& sys, const Vec6& u, Mat6& jac) {
    Vec6 rp{}, rm{};
    for (int j = 0; j < 6; ++j) {
        double h = 1e-6 * std::max(1.0, std::fabs(u[j]));
        Vec6 up = u, um = u;
        up[j] += h;
        um[j] -= h;
        if (!sys.residual(up, rp) || !sys.residual(um, rm)) return false;
        for (int i = 0; i < 6; ++i) jac[i][j] = (rp[i] - rm[i]) / (2.0 * h);
    }
    return true;
}

bool in_guard_box(const ReducedSystem& sys, const Vec6& u) {
    if (!(u[0] > -2.0 && u[0] < 10.0)) return false;
    if (!(u[1] > 1e-8 && u[1] < 10.0)) return false;
    double lo = (sys.tmpl == TemplateKind::C) ? -5.0 : -2.0;
    double hi = (sys.tmpl == TemplateKind::C) ? 10.0 : 3.0;
    for (int j = 2; j < 6; ++j)
        if (!(u[j] > lo && u[j] < hi)) return false;
    return true;
}

bool in_acceptance_box(const ReducedSystem& sys, const Vec6& u, double margin) {
    double x = u[0], y = u[1];
    if (!(x >= margin && y >= margin)) return false;
    if (!(x + y >= 1.0 + margin)) return false;
    if (!(x <= y + 1e-9)) return false;
    if (!(x <= 5.0 && y <= 5.0)) return false;
    switch (sys.tmpl) {
        case TemplateKind::C: {
            double s = u[2], t = u[3], m = u[4], n = u[5];
            if (!(m >= margin && m <= 1.0 - margin)) return false;
            if (!(n >= margin && n <= 1.0 - margin)) return false;
            if (!(s >= -margin && s <= std::max(1.0, x) + margin)) return false;
            if (!(t >= -margin && t <= std::max(1.0, y) + margin)) return false;
            return true;
        }
        case TemplateKind::A: {
            for (int j = 2; j < 6; ++j)
                if (!(u[j] >= margin && u[j] <= 1.0 - margin)) return false;
            if (!(u[3] - u[2] >= margin)) return false;  // ordered bottom cuts
            if (!(u[5] - u[4] >= margin)) return false;  // ordered top cuts
            return true;
        }
        case TemplateKind::B: {
            for (int j = 2; j < 6; ++j)
                if (!(u[j] >= margin && u[j] <= 1.0 - margin)) return false;
            return true;
        }
    }
    return false;
}

Vec6 sample_start(const ReducedSystem& sys, SplitMix64& rng) {
    Vec6 u{};
    double y = rng.uniform(0.5, 5.0);
    double lo = std::max(1e-3, 1.0 - y + 1e-3);
    double x = rng.uniform(lo, y);
    u[0] = x;
    u[1] = y;
    switch (sys.tmpl) {
        case TemplateKind::C:
            u[2] = rng.uniform(0.0, std::max(1.0, x));
            u[3] = rng.uniform(0.0, std::max(1.0, y));
            u[4] = rng.uniform(0.0, 1.0);
            u[5] = rng.uniform(0.0, 1.0);
            break;
        case TemplateKind::A: {
            double p1 = rng.uniform(0.0, 1.0), p2 = rng.uniform(0.0, 1.0);
            double w1 = rng.uniform(0.0, 1.0), w2 = rng.uniform(0.0, 1.0);
            u[2] = std::min(p1, p2);
            u[3] = std::max(p1, p2);
            u[4] = std::min(w1, w2);
            u[5] = std::max(w1, w2);
            break;
        }
        case TemplateKind::B:
            for (int j = 2; j < 6; ++j) u[j] = rng.uniform(0.0, 1.0);
            break;
    }
    return u;
}

struct NewtonOutcome {
    bool converged = false;
    Vec6 u{};
    double residual = 0.0;
};

NewtonOutcome newton_solve(const ReducedSystem& sys, Vec6 u, const SolverConfig& cfg) {
    NewtonOutcome out;
    Vec6 r{};
    if (!sys.residual(u, r)) return out;
    double rn = norm6(r);
    Mat6 jac{};
    std::array<double, 6> sigma{};
    Mat6 vmat{};

    for (int it = 0; it < cfg.newton_max_iters; ++it) {
        if (rn < 1e-13) break;
        if (rn > 1e6) return out;
        if (!fd_jacobian(sys, u, jac)) return out;
        linalg::svd_square<6>(jac, sigma, vmat);
        if (sigma[0] < 1e-300) return out;
        Vec6 step = linalg::pinv_apply<6>(jac, sigma, vmat, r, 1e-8);
        double sn = 0.0;
        for (double c : step) sn = std::max(sn, std::fabs(c));
        double cap = (sn > 1.0) ? 1.0 / sn : 1.0;

        bool improved = false;
        double lambda = cap;
        for (int halve = 0; halve < 8; ++halve) {
            Vec6 cand{};
            for (int j = 0; j < 6; ++j) cand[j] = u[j] - lambda * step[j];
            Vec6 rc{};
            if (sys.residual(cand, rc)) {
                double rcn = norm6(rc);
                if (rcn < rn) {
                    u = cand;
                    r = rc;
                    rn = rcn;
                    improved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!improved) break;
        if (!in_guard_box(sys, u)) return out;
    }
    if (rn <= cfg.residual_tol) {
        out.converged = true;
        out.u = u;
        out.residual = rn;
    }
    return out;
}

std::optional<Point2> canonical_of(const Vec6& u) {
    if (!is_valid_convex_params(u[0], u[1])) return std::nullopt;
    try {
        auto c = normalize_to_P(u[0], u[1]).params;
        return Point2{c.x, c.y};
    } catch (const Error&) {
        return std::nullopt;
    }
}

/// Corrector for pseudo-arclength continuation: Gauss-Newton on the residual
/// stacked with the tangent-plane constraint.
bool curve_corrector(const ReducedSystem& sys, const Vec6& tangent, const Vec6& pred, Vec6& w,
                     double target) {
    for (int k = 0; k < 12; ++k) {
        Vec6 r{};
        if (!sys.residual(w, r)) return false;
        double c = 0.0;
        for (int j = 0; j < 6; ++j) c += tangent[j] * (w[j] - pred[j]);
        double rn = norm6(r);
        if (rn < target && std::fabs(c) < 1e-9) return true;

        Mat6 jac{};
        if (!fd_jacobian(sys, w, jac)) return false;
        // Normal equations of the 7x6 stacked system.
        Mat6 ata{};
        Vec6 atb{};
        for (int a = 0; a < 6; ++a) {
            for (int b = 0; b < 6; ++b) {
                double s = tangent[a] * tangent[b];
                for (int i = 0; i < 6; ++i) s += jac[i][a] * jac[i][b];
                ata[a][b] = s;
            }
            double s = tangent[a] * (-c);
            for (int i = 0; i < 6; ++i) s += jac[i][a] * (-r[i]);
            atb[a] = s;
        }
        for (int a = 0; a < 6; ++a) ata[a][a] += 1e-14;
        Vec6 delta{};
        if (!linalg::solve<6>(ata, atb, delta)) return false;
        for (int j = 0; j < 6; ++j) w[j] += delta[j];
        if (!in_guard_box(sys, w)) return false;
    }
    Vec6 r{};
    if (!sys.residual(w, r)) return false;
    return norm6(r) < target;
}

std::optional<Vec6> null_direction(const ReducedSystem& sys, const Vec6& u, double rank_tol,
                                   bool* rank_deficient = nullptr) {
    Mat6 jac{};
    if (!fd_jacobian(sys, u, jac)) return std::nullopt;
    std::array<double, 6> sigma{};
    Mat6 vmat{};
    linalg::svd_square<6>(jac, sigma, vmat);
    if (rank_deficient) *rank_deficient = sigma[5] < rank_tol * std::max(sigma[0], 1e-300);
    Vec6 v{};
    for (int j = 0; j < 6; ++j) v[j] = vmat[j][5];
    return v;
}

std::vector<Vec6> trace_curve(const ReducedSystem& sys, const Vec6& u0, const SolverConfig& cfg) {
    std::vector<Vec6> pts;
    pts.push_back(u0);
    for (int dir = 0; dir < 2; ++dir) {
        auto v0 = null_direction(sys, u0, cfg.rank_tol);
        if (!v0) break;
        Vec6 v = *v0;
        if (dir == 1)
            for (double& c : v) c = -c;
        Vec6 u = u0;
        for (int step = 0; step < cfg.curve_max_steps; ++step) {
            Vec6 pred{};
            for (int j = 0; j < 6; ++j) pred[j] = u[j] + cfg.curve_step * v[j];
            Vec6 w = pred;
            if (!curve_corrector(sys, v, pred, w, 1e-11)) break;
            if (!in_acceptance_box(sys, w, cfg.box_margin)) break;
            pts.push_back(w);
            auto vn = null_direction(sys, w, cfg.rank_tol);
            if (!vn) break;
            double dot = 0.0;
            for (int j = 0; j < 6; ++j) dot += (*vn)[j] * v[j];
            if (dot < 0)
                for (double& c : *vn) c = -c;
            v = *vn;
            u = w;
        }
    }
    return pts;
}

std::optional<FamilyName> fit_family(const std::vector<Point2>& canonical) {
    if (canonical.empty()) return std::nullopt;
    for (const auto& curve : all_family_curves()) {
        double worst = 0.0;
        std::size_t stride = std::max<std::size_t>(1, canonical.size() / 50);
        for (std::size_t i = 0; i < canonical.size(); i += stride)
            worst = std::max(worst, curve_distance(curve, canonical[i].x, canonical[i].y));
        if (worst < 1e-6) return curve.name;
    }
    return std::nullopt;
}

}  // namespace

SolutionSet solve_template(const ReducedSystem& sys, const SolverConfig& cfg) {
    SolutionSet set;
    std::vector<Vec6> unique_roots;
    std::vector<double> unique_res;

    int tmpl_tag = static_cast<int>(sys.tmpl) * 16 + sys.variant;
    for (int start = 0; start < cfg.starts; ++start) {
        SplitMix64 rng(mix_seed(cfg.seed, tmpl_tag, sys.triple.index(), start));
        Vec6 u0 = sample_start(sys, rng);
        NewtonOutcome res = newton_solve(sys, u0, cfg);
        if (!res.converged) continue;
        if (!in_acceptance_box(sys, res.u, cfg.box_margin)) continue;
        bool dup = false;
        for (const auto& r : unique_roots)
            if (dist_inf(r, res.u) < cfg.dedup_radius) {
                dup = true;
                break;
            }
        if (dup) continue;
        unique_roots.push_back(res.u);
        unique_res.push_back(res.residual);
    }

    for (std::size_t i = 0; i < unique_roots.size(); ++i) {
        const Vec6& u = unique_roots[i];
        auto canon = canonical_of(u);
        if (!canon) continue;

        bool on_line = std::fabs(canon->x - 1.0) < cfg.trapezoid_tol ||
                       std::fabs(canon->y - 1.0) < cfg.trapezoid_tol;
        bool near_corner = std::hypot(canon->x - 1.0, canon->y - 1.0) < cfg.corner_shelf;
        if (on_line || near_corner) {
            set.trapezoidal.push_back({u, unique_res[i], *canon});
            continue;
        }

        // A recorded solution must materialize into a genuine dissection.
        try {
            Dissection d = dissection_from_solution(sys, u, cfg.verify_tol);
            (void)d;
        } catch (const Error&) {
            continue;
        }

        // Already on a traced curve?
        bool absorbed = false;
        for (auto& curve : set.curves) {
            bool candidate = false;
            if (curve.family) {
                candidate = curve_distance(family_curve(*curve.family), canon->x, canon->y) < 1e-5;
            }
            if (!candidate) {
                for (std::size_t k = 0; k < curve.points.size(); k += 20)
                    if (dist_inf(curve.points[k], u) < 0.05) {
                        candidate = true;
                        break;
                    }
            }
            if (!candidate) continue;
            for (const auto& p : curve.points)
                if (dist_inf(p, u) < 10.0 * cfg.curve_step) {
                    absorbed = true;
                    break;
                }
            if (absorbed) break;
        }
        if (absorbed) continue;

        bool deficient = false;
        auto nd = null_direction(sys, u, cfg.rank_tol, &deficient);
        bool classified_curve = false;
        if (nd && deficient) {
            auto pts = trace_curve(sys, u, cfg);
            if (static_cast<int>(pts.size()) >= cfg.curve_min_steps) {
                TracedCurve c;
                c.representative = u;
                c.points = std::move(pts);
                for (const auto& p : c.points) {
                    auto pc = canonical_of(p);
                    c.canonical.push_back(pc ? *pc : Point2{0, 0});
                }
                c.family = fit_family(c.canonical);
                set.curves.push_back(std::move(c));
                classified_curve = true;
            }
        }
        if (classified_curve) continue;

        IsolatedSolution iso;
        iso.u = u;
        iso.residual = unique_res[i];
        iso.canonical = *canon;
        Membership m = is_member(canon->x, canon->y, 1e-6);
        iso.families = m.families;
        iso.singular_ids = m.singular_ids;
        iso.special = m.special;
        set.isolated.push_back(std::move(iso));
    }
    return set;
}

std::vector<std::string> Catalogue::curve_triples() const {
    std::vector<std::string> out;
    for (const auto& r : results)
        if (!r.solutions.curves.empty()) {
            std::string key = r.triple.to_string();
            if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(key);
        }
    return out;
}

std::vector<std::string> Catalogue::isolated_triples() const {
    std::vector<std::string> with_curves = curve_triples();
    std::vector<std::string> out;
    for (const auto& r : results) {
        if (r.solutions.isolated.empty()) continue;
        std::string key = r.triple.to_string();
        if (std::find(with_curves.begin(), with_curves.end(), key) != with_curves.end())
            continue;
        if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(key);
    }
    return out;
}

Catalogue sweep_all(TemplateKind tmpl, const SolverConfig& cfg) {
    int variants = template_variant_count(tmpl);
    int total = variants * 512;
    std::vector<SolutionSet> sets(total);

    int jobs = cfg.jobs > 0 ? cfg.jobs
                            : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int task = next.fetch_add(1);
            if (task >= total) return;
            int variant = task / 512;
            int idx = task % 512;
            ReducedSystem sys = build_system(tmpl, variant, PermutationTriple::from_index(idx));
            sets[task] = solve_template(sys, cfg);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    Catalogue cat;
    cat.tmpl = tmpl;
    cat.cfg = cfg;
    for (int task = 0; task < total; ++task) {
        SolutionSet& s = sets[task];
        if (!s.has_nontrapezoidal() && s.trapezoidal.empty()) continue;
        TripleResult r;
        r.tmpl = tmpl;
        r.variant = task / 512;
        r.triple = PermutationTriple::from_index(task % 512);
        r.solutions = std::move(s);
        cat.results.push_back(std::move(r));
    }
    return cat;
}

Dissection dissection_from_solution(const ReducedSystem& sys, const ReducedSystem::Vec6& u,
                                    double tol) {
    std::array<std::array<Point2, 4>, 3> pieces{};
    if (!sys.piece_vertices(u, pieces))
        throw VerificationFailure("solution is not geometrically evaluable");
    double x = u[0], y = u[1];
    const std::array<Point2, 3> src = {{{0, 0}, {1, 0}, {x, y}}};
    const std::array<const VertexCorrespondence*, 3> corr = {&sys.triple.pi_a, &sys.triple.pi_b,
                                                             &sys.triple.pi_c};

    Dissection d;
    d.parent = make_quadrangle({{{0, 0}, {1, 0}, {x, y}, {0, 1}}});
    for (int k = 0; k < 3; ++k) {
        const auto& pv = pieces[k];
        const auto& pi = *corr[k];
        DissectionPiece p;
        p.quad = make_quadrangle(pv);
        p.corr = pi;
        p.map = affine_from_triples(src, {pv[pi(0)], pv[pi(1)], pv[pi(2)]});
        d.pieces.push_back(p);
    }
    VerificationReport rep = verify(d, tol);
    if (!rep.passed) throw VerificationFailure("materialized dissection failed verification");
    try {
        d.ctype = combinatorial_type(d);
    } catch (const Error&) {
        d.ctype = CombinatorialType::Other;
    }
    return d;
}

Dissection transform_dissection(const Dissection& d, const AffineMap2& tau) {
    AffineMap2 tau_inv = invert(tau);
    Dissection out;
    std::array<Point2, 4> pv{};
    for (int i = 0; i < 4; ++i) pv[i] = tau(d.parent.v[i]);
    out.parent = make_quadrangle(pv);
    if (d.source_override) {
        std::array<Point2, 4> sv{};
        for (int i = 0; i < 4; ++i) sv[i] = tau(d.source_override->v[i]);
        out.source_override = make_quadrangle(sv);
    }
    out.ctype = d.ctype;
    for (const auto& p : d.pieces) {
        DissectionPiece np;
        std::array<Point2, 4> nv{};
        for (int i = 0; i < 4; ++i) nv[i] = tau(p.quad.v[i]);
        np.quad = make_quadrangle(nv);
        np.map = compose(tau, compose(p.map, tau_inv));
        np.corr = p.corr;
        out.pieces.push_back(np);
    }
    return out;
}

std::optional<ReducedSystem::Vec6> solve_pinned_canonical_x(const ReducedSystem& sys,
                                                            const ReducedSystem::Vec6& seed_u,
                                                            double target_x) {
    Vec6 w = seed_u;
    auto constraint = [&](const Vec6& u) -> std::optional<double> {
        auto c = canonical_of(u);
        if (!c) return std::nullopt;
        return c->x - target_x;
    };
    for (int it = 0; it < 80; ++it) {
        Vec6 r{};
        if (!sys.residual(w, r)) return std::nullopt;
        auto c = constraint(w);
        if (!c) return std::nullopt;
        double rn = norm6(r);
        if (rn < 1e-12 && std::fabs(*c) < 1e-12) return w;

        Mat6 jac{};
        if (!fd_jacobian(sys, w, jac)) return std::nullopt;
        Vec6 crow{};
        for (int j = 0; j < 6; ++j) {
            double h = 1e-7 * std::max(1.0, std::fabs(w[j]));
            Vec6 up = w, um = w;
            up[j] += h;
            um[j] -= h;
            auto cp = constraint(up), cm = constraint(um);
            if (!cp || !cm) return std::nullopt;
            crow[j] = (*cp - *cm) / (2.0 * h);
        }
        Mat6 ata{};
        Vec6 atb{};
        for (int a = 0; a < 6; ++a) {
            for (int b = 0; b < 6; ++b) {
                double s = crow[a] * crow[b];
                for (int i = 0; i < 6; ++i) s += jac[i][a] * jac[i][b];
                ata[a][b] = s;
            }
            double s = crow[a] * (-*c);
            for (int i = 0; i < 6; ++i) s += jac[i][a] * (-r[i]);
            atb[a] = s;
        }
        for (int a = 0; a < 6; ++a) ata[a][a] += 1e-14;
        Vec6 delta{};
        if (!linalg::solve<6>(ata, atb, delta)) return std::nullopt;
        for (int j = 0; j < 6; ++j) w[j] += delta[j];
    }
    return std::nullopt;
}

std::vector<Dissection> special_quadrangle_realizations(const SolverConfig& cfg) {
    const double x0 = special_point().x;
    std::vector<Dissection> out;

    auto canonical_frame = [&](const Dissection& d) {
        auto maps = normalizing_maps(d.parent);
        // The distinguished quadrangle has a unique canonical frame; take the
        // first map and rotate the normal form onto (0,0),(1,0),(x,y),(0,1).
        return transform_dissection(d, maps.front());
    };

    std::vector<PermutationTriple> triples = family_triples();
    triples.push_back(singular_triples()[13]);  // the two single-solution
    triples.push_back(singular_triples()[14]);  // triples landing on the point

    for (std::size_t ti = 0; ti < triples.size(); ++ti) {
        ReducedSystem sys = build_system(TemplateKind::C, 0, triples[ti]);
        SolutionSet set = solve_template(sys, cfg);
        std::optional<Vec6> chosen;
        if (ti < 6) {
            // Family triple: pick the traced curve point pinned at the
            // canonical x of the distinguished quadrangle.
            for (const auto& curve : set.curves) {
                double best = 1e300;
                Vec6 seed{};
                for (std::size_t k = 0; k < curve.points.size(); ++k) {
                    double dx = std::fabs(curve.canonical[k].x - x0);
                    if (dx < best) {
                        best = dx;
                        seed = curve.points[k];
                    }
                }
                if (best < 0.05) {
                    chosen = solve_pinned_canonical_x(sys, seed, x0);
                    if (chosen) break;
                }
            }
        } else {
            for (const auto& iso : set.isolated)
                if (std::fabs(iso.canonical.x - x0) < 1e-4) chosen = iso.u;
        }
        if (!chosen)
            throw ConvergenceFailure("realization for triple " + triples[ti].to_string() +
                                     " not found");
        out.push_back(canonical_frame(dissection_from_solution(sys, *chosen)));
    }
    return out;
}

}  // namespace selfaffine
