// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code is the number of
// failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "selfaffine/constructions.hpp"
#include "selfaffine/dissection_io.hpp"
#include "selfaffine/families.hpp"
#include "selfaffine/render.hpp"
#include "selfaffine/rng.hpp"
#include "selfaffine/solver.hpp"
#include "selfaffine/solver_io.hpp"

using namespace selfaffine;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool passed, const std::string& details) {
    std::printf("%s — criterion %d: %s (%s)\n", passed ? "PASS" : "FAIL", id, name.c_str(),
                details.c_str());
    std::fflush(stdout);
    if (!passed) ++failures;
}

const std::chrono::steady_clock::time_point kSuiteStart = std::chrono::steady_clock::now();

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - kSuiteStart).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

void criterion1_table1() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;
    try {
        const auto& rows = table1_solutions();
        if (rows.size() != 13) {
            ok = false;
            why = "row count";
        }
        for (const auto& s : rows) {
            auto refined = newton2(s.eq1, s.eq2, s.seed, 1e-12, 100);
            if (!refined || std::fabs(refined->x - s.seed.x) >= 1e-5 ||
                std::fabs(refined->y - s.seed.y) >= 1e-5) {
                ok = false;
                why += " row" + std::to_string(s.id);
            }
            if (s.closed_value && refined) {
                if (std::fabs(refined->x - s.closed_value->x) >= 1e-12 ||
                    std::fabs(refined->y - s.closed_value->y) >= 1e-12) {
                    ok = false;
                    why += " closed" + std::to_string(s.id);
                }
            }
        }
    } catch (const Error& e) {
        ok = false;
        why = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 1.0) {
        ok = false;
        why += " too slow";
    }
    report(1, "singular-table reproduction", ok,
           "13 systems refined in " + fmt(secs) + " s" + why);
}

// ------------------------------------------------------------ criteria 2 & 3

Catalogue criterion2_census() {
    SolverConfig cfg;
    cfg.seed = 0;
    cfg.starts = 2000;
    cfg.jobs = 0;
    auto t0 = std::chrono::steady_clock::now();
    Catalogue cat = sweep_all(TemplateKind::C, cfg);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::set<std::string> want_curves, want_isolated, got_curves, got_isolated;
    for (const auto& t : family_triples()) want_curves.insert(t.to_string());
    for (const auto& t : singular_triples()) want_isolated.insert(t.to_string());
    for (const auto& s : cat.curve_triples()) got_curves.insert(s);
    for (const auto& s : cat.isolated_triples()) got_isolated.insert(s);

    bool ok = got_curves == want_curves && got_isolated == want_isolated;
    std::string detail = std::to_string(got_curves.size()) + " curve + " +
                         std::to_string(got_isolated.size()) + " isolated triples in " +
                         fmt(secs) + " s";
    if (!ok) {
        for (const auto& s : got_curves)
            if (!want_curves.count(s)) detail += " extra-curve:" + s;
        for (const auto& s : got_isolated)
            if (!want_isolated.count(s)) detail += " extra-iso:" + s;
        for (const auto& s : want_curves)
            if (!got_curves.count(s)) detail += " missing-curve:" + s;
        for (const auto& s : want_isolated)
            if (!got_isolated.count(s)) detail += " missing-iso:" + s;
    }
    report(2, "permutation census (512 triples, 2000 starts)", ok, detail);
    return cat;
}

void criterion3_family_recovery(const Catalogue& cat) {
    std::set<std::string> fam_set;
    for (const auto& t : family_triples()) fam_set.insert(t.to_string());

    double worst_curve = 0.0;
    int special_hits = 0;
    double worst_special_xy = 0.0, worst_special_res = 0.0;
    Point2 sp = special_point();
    Poly2 eq1{{0, 2, 1}, {1, 0, 1}, {0, 0, -1}};
    Poly2 eq2{{2, 0, 1}, {1, 0, -1}, {0, 1, -1}, {0, 0, 1}};

    for (const auto& r : cat.results) {
        bool is_family = fam_set.count(r.triple.to_string()) != 0;
        if (is_family) {
            for (const auto& c : r.solutions.curves)
                for (const auto& p : c.canonical)
                    worst_curve =
                        std::max(worst_curve, std::fabs(p.y - (p.x * p.x - p.x + 1.0)));
        }
        std::string key = r.triple.to_string();
        if (key == "2143,2341,1432" || key == "2143,2143,3412") {
            for (const auto& iso : r.solutions.isolated) {
                ++special_hits;
                worst_special_xy = std::max(
                    worst_special_xy, std::max(std::fabs(iso.canonical.x - sp.x),
                                               std::fabs(iso.canonical.y - sp.y)));
                worst_special_res = std::max(
                    worst_special_res,
                    std::max(std::fabs(eq1.eval(iso.canonical.x, iso.canonical.y)),
                             std::fabs(eq2.eval(iso.canonical.x, iso.canonical.y))));
            }
        }
    }
    // Printed decimals are 5-digit truncations of the exact point.
    double printed_dx = std::fabs(sp.x - 0.43015), printed_dy = std::fabs(sp.y - 0.75487);
    bool ok = worst_curve < 1e-8 && special_hits == 2 && worst_special_res < 1e-10 &&
              worst_special_xy + std::max(printed_dx, printed_dy) < 1e-5;
    report(3, "family-C recovery", ok,
           "max curve defect " + fmt(worst_curve) + ", distinguished point hit " +
               std::to_string(special_hits) + "x, residual " + fmt(worst_special_res));
}

// ---------------------------------------------------------------- criterion 4

void criterion4_glasscut() {
    SolverConfig cfg;
    cfg.seed = 0;
    cfg.starts = 400;
    cfg.jobs = 0;

    auto check = [&](TemplateKind tk, std::vector<FamilyName> fams, const char* label,
                     int id_for_report) {
        auto t0 = std::chrono::steady_clock::now();
        Catalogue cat = sweep_all(tk, cfg);
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        double worst = 0.0;
        long points = 0;
        std::set<std::string> fitted;
        for (const auto& r : cat.results) {
            auto point_defect = [&](const Point2& p) {
                double best = 1e300;
                for (FamilyName f : fams)
                    best = std::min(best,
                                    std::fabs(curve_residual(family_curve(f), p.x, p.y)));
                return best;
            };
            for (const auto& c : r.solutions.curves) {
                if (c.family) fitted.insert(to_string(*c.family));
                for (const auto& p : c.canonical) {
                    worst = std::max(worst, point_defect(p));
                    ++points;
                }
            }
            for (const auto& iso : r.solutions.isolated) {
                worst = std::max(worst, point_defect(iso.canonical));
                ++points;
            }
        }
        bool covered = true;
        for (FamilyName f : fams)
            if (!fitted.count(to_string(f))) covered = false;
        bool ok = points > 0 && worst < 1e-8 && covered;
        std::string fit_list;
        for (const auto& s : fitted) fit_list += s + " ";
        report(id_for_report, label, ok,
               std::to_string(points) + " recovered points, max residual " + fmt(worst) +
                   ", families {" + fit_list + "} in " + fmt(secs) + " s");
    };
    check(TemplateKind::A, {FamilyName::A}, "glass-cut template A recovers only curve A", 4);
    check(TemplateKind::B, {FamilyName::B1, FamilyName::B2},
          "glass-cut template B recovers only B1 and B2", 4);
}

// ---------------------------------------------------------------- criterion 5

void criterion5_constructions() {
    bool ok = true;
    std::string why;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            why += " " + what;
        }
    };
    const std::array<std::array<double, 3>, 3> weight_sets = {{
        {1.0 / 3, 1.0 / 3, 1.0 / 3},
        {0.2, 0.3, 0.5},
        {0.5, 0.25, 0.25},
    }};
    for (int i = 1; i <= 10; ++i) {
        double z = 0.1 * i;
        for (const auto& w : weight_sets)
            expect(verify(trapezoid_A(z, w), 1e-9).passed, "A(z=" + fmt(z) + ")");
        expect(verify(trapezoid_B(z), 1e-9).passed, "B(z=" + fmt(z) + ")");
        if (i <= 9) expect(verify(trapezoid_C(z), 1e-9).passed, "C(z=" + fmt(z) + ")");
    }
    for (int n = 3; n <= 8; ++n)
        expect(verify(nonconvex_n_self_affine(n), 1e-9).passed, "nonconvex n=" + std::to_string(n));
    SplitMix64 rng(987);
    for (int i = 0; i < 50; ++i) {
        double x = rng.uniform(0.05, 0.9);
        double y = rng.uniform(0.05, 0.95 - x);
        int k = 1 + static_cast<int>(rng.below(5));
        expect(verify(nonconvex_chain(x, y, k), 1e-9).passed, "chain" + std::to_string(i));
    }
    double worst_zeta = 0.0;
    for (int i = 1; i < 100; ++i) {
        double z = i / 100.0;
        double zeta = trapezoid_B_zeta(z);
        worst_zeta = std::max(worst_zeta, std::fabs(z - zeta - z * z * (1.0 - z * zeta)));
    }
    expect(worst_zeta < 1e-12, "zeta identity");
    double worst_closure = 0.0;
    for (int n = 3; n <= 8; ++n)
        worst_closure = std::max(worst_closure, assembly_closure_residual(n, solve_f_n(n).front()));
    expect(worst_closure < 1e-12, "assembly closure");
    report(5, "construction verification grids", ok,
           "zeta defect " + fmt(worst_zeta) + ", closure defect " + fmt(worst_closure) + why);
}

// ---------------------------------------------------------------- criterion 6

void criterion6_roots() {
    bool ok = true;
    std::string why;
    auto r3 = solve_f_n(3);
    auto r4 = solve_f_n(4);
    if (r3.empty() || std::fabs(r3.front() - 0.43015) >= 1e-5) {
        ok = false;
        why += " n3-root";
    }
    if (r4.empty() || std::fabs(r4.front() - 0.48662) >= 1e-5) {
        ok = false;
        why += " n4-root";
    }
    // Independent oracle: bisect x^3 - 2x^2 + 3x - 1 on (0,1).
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        double mid = 0.5 * (lo + hi);
        double v = ((mid - 2.0) * mid + 3.0) * mid - 1.0;
        (v < 0 ? lo : hi) = mid;
    }
    double cubic_root = 0.5 * (lo + hi);
    if (!r3.empty() && std::fabs(r3.front() - cubic_root) >= 1e-12) {
        ok = false;
        why += " cubic-oracle";
    }

    auto has_vertex = [](const Dissection& d, double x, double y) {
        for (const auto& p : d.pieces)
            for (const auto& v : p.quad.v)
                if (std::fabs(v.x - x) < 1e-4 && std::fabs(v.y - y) < 1e-4) return true;
        return false;
    };
    auto d3 = nonconvex_n_self_affine(3);
    auto d4 = nonconvex_n_self_affine(4);
    if (!has_vertex(d3, 0.18503, 0.43015) || !has_vertex(d3, 0.32471, 0.18503)) {
        ok = false;
        why += " drawn-n3";
    }
    if (!has_vertex(d4, 0.36505, 0.18741) || !has_vertex(d4, 0.46126, 0.23680)) {
        ok = false;
        why += " drawn-n4";
    }
    report(6, "non-convex roots and drawn vertices", ok,
           "x0(3)=" + fmt(r3.empty() ? 0.0 : r3.front()) +
               " x0(4)=" + fmt(r4.empty() ? 0.0 : r4.front()) + why);
}

// ------------------------------------------------------------ criteria 7 & 10

std::vector<Dissection> criterion7_realizations() {
    std::vector<Dissection> all;
    bool ok = true;
    std::string why;
    try {
        SolverConfig cfg;
        cfg.seed = 0;
        cfg.starts = 800;
        cfg.jobs = 0;
        all = special_quadrangle_realizations(cfg);
        if (all.size() != 8) {
            ok = false;
            why += " count=" + std::to_string(all.size());
        }
        std::set<std::string> sigs;
        for (const auto& d : all) {
            if (!verify(d, 1e-9).passed) {
                ok = false;
                why += " unverified";
            }
            sigs.insert(equivalence_signature(d));
        }
        if (sigs.size() != all.size()) {
            ok = false;
            why += " signatures=" + std::to_string(sigs.size());
        }
    } catch (const Error& e) {
        ok = false;
        why = e.what();
    }
    report(7, "eight realizations of the distinguished quadrangle", ok,
           std::to_string(all.size()) + " dissections, pairwise-distinct signatures" + why);
    return all;
}

// ---------------------------------------------------------------- criterion 8

void criterion8_refinement() {
    bool ok = true;
    std::string why;
    try {
        auto base = nonconvex_n_self_affine(3);
        Dissection current = base;
        std::size_t expected = 3;
        for (int k = 1; k <= 3; ++k) {
            current = refine(current, 0, base);
            expected += 2;
            if (current.pieces.size() != expected || !verify(current, 1e-9).passed) {
                ok = false;
                why += " k=" + std::to_string(k);
            }
        }
    } catch (const Error& e) {
        ok = false;
        why = e.what();
    }
    report(8, "refinement corollary (5, 7, 9 pieces)", ok, "3 nested refinements" + why);
}

// ---------------------------------------------------------------- criterion 9

void criterion9_invariants() {
    bool ok = true;
    std::string why;

    // Diagonal-ratio invariance over 1000 random maps.
    {
        auto q = nonconvex_quadrangle(0.43015, 0.24512);
        double i0 = diagonal_invariant(q);
        SplitMix64 rng(555);
        int done = 0;
        while (done < 1000) {
            AffineMap2 m{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                         rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
            if (std::fabs(m.det()) < 0.05) continue;
            std::array<Point2, 4> tv{};
            for (int i = 0; i < 4; ++i) tv[i] = m(q.v[i]);
            auto tq = make_quadrangle(tv);
            if (tq.kind != QuadKind::NonConvex ||
                std::fabs(diagonal_invariant(tq) - i0) >= 1e-9) {
                ok = false;
                why += " diagonal-invariance";
                break;
            }
            ++done;
        }
    }

    // Parametrization involution and unique canonical member, 1000 samples.
    {
        SplitMix64 rng(556);
        for (int it = 0; it < 1000; ++it) {
            double x, y;
            do {
                x = rng.uniform(0.05, 3.0);
                y = rng.uniform(0.05, 3.0);
            } while (x + y <= 1.05);
            Point2 p{x, y};
            for (int k = 0; k < 4; ++k) p = apply_substitution(Substitution::Cycle, p.x, p.y);
            if (std::fabs(p.x - x) > 1e-10 || std::fabs(p.y - y) > 1e-10) {
                ok = false;
                why += " involution";
                break;
            }
            auto all = eight_parametrizations(x, y);
            int members = 0;
            std::vector<Point2> distinct;
            for (const auto& cand : all) {
                if (cand.x + cand.y > 1.0 - 1e-9 && cand.y <= 1.0 + 1e-9 &&
                    cand.x <= cand.y + 1e-9) {
                    bool dup = false;
                    for (const auto& d : distinct)
                        if (std::fabs(d.x - cand.x) < 1e-9 && std::fabs(d.y - cand.y) < 1e-9)
                            dup = true;
                    if (!dup) {
                        distinct.push_back({cand.x, cand.y});
                        ++members;
                    }
                }
            }
            if (members != 1) {
                ok = false;
                why += " unique-member";
                break;
            }
        }
    }

    // Verifier fault injection: no corruption may slip through.
    {
        SplitMix64 rng(557);
        int corruptions = 0, false_passes = 0;
        while (corruptions < 500) {
            Dissection d;
            double z = rng.uniform(0.1, 0.95);
            switch (rng.below(4)) {
                case 0: {
                    double w1 = rng.uniform(0.05, 0.8);
                    double w2 = rng.uniform(0.05, 0.9 - w1);
                    d = trapezoid_A(z, {w1, w2, 1.0 - w1 - w2});
                    break;
                }
                case 1: d = trapezoid_B(z); break;
                case 2:
                    d = trapezoid_C(std::min(z, 0.95));
                    break;
                default: {
                    double x = rng.uniform(0.05, 0.85);
                    double y = rng.uniform(0.05, 0.9 - x);
                    d = nonconvex_chain(x, y, 2 + static_cast<int>(rng.below(4)));
                    break;
                }
            }
            if (!verify(d, 1e-9).passed) {
                ok = false;
                why += " construction-failed";
                break;
            }
            for (int c = 0; c < 3 && corruptions < 500; ++c) {
                Dissection bad = d;
                int mode = static_cast<int>(rng.below(3));
                if (mode == 0) {
                    auto& v = bad.pieces[rng.below(static_cast<std::uint32_t>(
                                  bad.pieces.size()))].quad.v[rng.below(4)];
                    v.x += 1e-5 * (1.0 + rng.next_double());
                    v.y -= 1e-5 * (1.0 + rng.next_double());
                } else if (mode == 1 && bad.pieces.size() >= 2) {
                    bad.pieces.pop_back();
                } else {
                    std::swap(bad.pieces.front().map, bad.pieces.back().map);
                }
                ++corruptions;
                if (verify(bad, 1e-9).passed) ++false_passes;
            }
        }
        if (false_passes != 0) {
            ok = false;
            why += " false-passes=" + std::to_string(false_passes);
        }
    }
    report(9, "invariant suites", ok, "1000+1000 property samples, 500 corruptions" + why);
}

void criterion10_determinism(const std::vector<Dissection>& realizations,
                             const Catalogue& big_cat) {
    bool ok = true;
    std::string why;

    SolverConfig cfg;
    cfg.seed = 0;
    cfg.starts = 300;
    cfg.jobs = 2;
    Catalogue c1 = sweep_all(TemplateKind::C, cfg);
    cfg.jobs = 1;
    Catalogue c2 = sweep_all(TemplateKind::C, cfg);
    std::string j1 = catalogue_to_json(c1);
    std::string j2 = catalogue_to_json(c2);
    if (j1 != j2) {
        ok = false;
        why += " catalogue-bytes";
    }

    if (!realizations.empty()) {
        RenderOptions opts;
        opts.labels = LabelMode::VertexNumbers;
        std::string svg1 = render_dissection(realizations.front(), opts);
        std::string svg2 = render_dissection(realizations.front(), opts);
        if (svg1 != svg2 || svg1.empty()) {
            ok = false;
            why += " dissection-svg";
        }
    }
    // Chart goldens from the two independent sweeps must agree byte for
    // byte, as must the chart of the full catalogue with itself.
    if (render_parameter_chart(c1) != render_parameter_chart(c2)) {
        ok = false;
        why += " chart-cross-run";
    }
    std::string chart1 = render_parameter_chart(big_cat);
    std::string chart2 = render_parameter_chart(big_cat);
    if (chart1 != chart2 || chart1.empty()) {
        ok = false;
        why += " chart-svg";
    }
    report(10, "determinism (byte-identical reruns)", ok,
           "sweeps with 1 and 2 workers, SVG goldens re-rendered" + why);
}

}  // namespace

int main() {
    std::printf("acceptance suite started\n");
    criterion1_table1();
    Catalogue cat = criterion2_census();
    criterion3_family_recovery(cat);
    criterion4_glasscut();
    criterion5_constructions();
    criterion6_roots();
    auto realizations = criterion7_realizations();
    criterion8_refinement();
    criterion9_invariants();
    criterion10_determinism(realizations, cat);
    std::printf("acceptance suite finished in %.1f s with %d failure(s)\n", now_seconds(),
                failures);
    return failures;
}
