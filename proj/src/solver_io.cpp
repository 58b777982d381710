#include "selfaffine/solver_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include <json.hpp>

#include "selfaffine/constructions.hpp"
#include "selfaffine/json_writer.hpp"
#include "selfaffine/rng.hpp"

namespace selfaffine {

namespace {

constexpr std::size_t kTrapezoidCap = 200;

void write_vec6(JsonWriter& w, const ReducedSystem::Vec6& u) {
    w.begin_array();
    for (double c : u) w.value(c);
    w.end_array();
}

ReducedSystem::Vec6 read_vec6(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 6) throw ParseError("expected 6 components");
    ReducedSystem::Vec6 u{};
    for (int i = 0; i < 6; ++i) u[i] = j[i].get<double>();
    return u;
}

}  // namespace

std::string catalogue_to_json(const Catalogue& cat) {
    JsonWriter w;
    w.begin_object();
    w.key("template").value(to_string(cat.tmpl));
    w.key("seed").value(static_cast<long long>(cat.cfg.seed));
    w.key("starts").value(cat.cfg.starts);
    w.key("triples").begin_array();
    for (const auto& r : cat.results) {
        w.begin_object();
        w.key("variant").value(r.variant);
        w.key("pi").value(r.triple.to_string());
        w.key("isolated").begin_array();
        for (const auto& iso : r.solutions.isolated) {
            w.begin_object();
            w.key("u");
            write_vec6(w, iso.u);
            w.key("residual").value(iso.residual);
            w.key("canonical").begin_array().value(iso.canonical.x).value(iso.canonical.y)
                .end_array();
            w.key("families").begin_array();
            for (auto f : iso.families) w.value(to_string(f));
            w.end_array();
            w.key("singular").begin_array();
            for (int id : iso.singular_ids) w.value(id);
            w.end_array();
            w.key("special").value(iso.special);
            w.end_object();
        }
        w.end_array();
        w.key("curves").begin_array();
        for (const auto& c : r.solutions.curves) {
            w.begin_object();
            w.key("family").value(c.family ? to_string(*c.family) : "");
            w.key("representative");
            write_vec6(w, c.representative);
            w.key("count").value(static_cast<long long>(c.points.size()));
            w.key("canonical").begin_array();
            for (const auto& p : c.canonical) w.begin_array().value(p.x).value(p.y).end_array();
            w.end_array();
            w.end_object();
        }
        w.end_array();
        w.key("trapezoidal_count").value(static_cast<long long>(r.solutions.trapezoidal.size()));
        w.key("trapezoidal").begin_array();
        for (std::size_t i = 0; i < std::min(kTrapezoidCap, r.solutions.trapezoidal.size());
             ++i) {
            const auto& tr = r.solutions.trapezoidal[i];
            w.begin_object();
            w.key("u");
            write_vec6(w, tr.u);
            w.key("residual").value(tr.residual);
            w.key("canonical").begin_array().value(tr.canonical.x).value(tr.canonical.y)
                .end_array();
            w.end_object();
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();

    // Census summary: triples with curves, and with isolated points only.
    w.key("census").begin_object();
    w.key("curves").begin_array();
    for (const auto& s : cat.curve_triples()) w.value(s);
    w.end_array();
    w.key("isolated").begin_array();
    for (const auto& s : cat.isolated_triples()) w.value(s);
    w.end_array();
    w.end_object();
    w.end_object();
    return w.str();
}

Catalogue catalogue_from_json(const std::string& json) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json);
    } catch (const std::exception& e) {
        throw ParseError(std::string("catalogue JSON: ") + e.what());
    }
    Catalogue cat;
    try {
        auto tk = template_from_string(j.at("template").get<std::string>());
        if (!tk) throw ParseError("unknown template");
        cat.tmpl = *tk;
        cat.cfg.seed = j.value("seed", 0LL);
        cat.cfg.starts = j.value("starts", 0);
        for (const auto& rj : j.at("triples")) {
            TripleResult r;
            r.tmpl = cat.tmpl;
            r.variant = rj.value("variant", 0);
            auto triple = PermutationTriple::from_string(rj.at("pi").get<std::string>());
            if (!triple) throw ParseError("bad permutation triple");
            r.triple = *triple;
            for (const auto& ij : rj.at("isolated")) {
                IsolatedSolution iso;
                iso.u = read_vec6(ij.at("u"));
                iso.residual = ij.at("residual").get<double>();
                iso.canonical = {ij.at("canonical")[0].get<double>(),
                                 ij.at("canonical")[1].get<double>()};
                for (const auto& f : ij.at("families")) {
                    auto fam = family_from_string(f.get<std::string>());
                    if (fam) iso.families.push_back(*fam);
                }
                for (const auto& id : ij.at("singular"))
                    iso.singular_ids.push_back(id.get<int>());
                iso.special = ij.value("special", false);
                r.solutions.isolated.push_back(std::move(iso));
            }
            for (const auto& cj : rj.at("curves")) {
                TracedCurve c;
                c.representative = read_vec6(cj.at("representative"));
                std::string fam = cj.value("family", "");
                if (!fam.empty()) c.family = family_from_string(fam);
                for (const auto& p : cj.at("canonical"))
                    c.canonical.push_back({p[0].get<double>(), p[1].get<double>()});
                // Traced 6-vectors are not serialized; keep the representative.
                c.points.push_back(c.representative);
                r.solutions.curves.push_back(std::move(c));
            }
            for (const auto& tj : rj.at("trapezoidal")) {
                TrapezoidalSolution tr;
                tr.u = read_vec6(tj.at("u"));
                tr.residual = tj.at("residual").get<double>();
                tr.canonical = {tj.at("canonical")[0].get<double>(),
                                tj.at("canonical")[1].get<double>()};
                r.solutions.trapezoidal.push_back(tr);
            }
            cat.results.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("catalogue JSON: ") + e.what());
    }
    return cat;
}

namespace {

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& e : v) {
        if (!s.empty()) s += " ";
        s += e;
    }
    return s;
}

ReportCheck check_table1(double newton_target) {
    ReportCheck c;
    c.name = "singular-table reproduction";
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
        for (const auto& s : table1_solutions()) {
            auto refined = newton2(s.eq1, s.eq2, s.seed, newton_target, 200);
            if (!refined) {
                ok = false;
                detail += "row " + std::to_string(s.id) + " did not reach the target; ";
                continue;
            }
            double dx = std::fabs(refined->x - s.seed.x);
            double dy = std::fabs(refined->y - s.seed.y);
            if (dx >= 1e-5 || dy >= 1e-5) {
                ok = false;
                detail += "row " + std::to_string(s.id) + " off the printed value; ";
            }
            if (s.closed_value) {
                double d = distance(*refined, *s.closed_value);
                if (d >= 1e-12) {
                    ok = false;
                    detail += "row " + std::to_string(s.id) + " closed form mismatch; ";
                }
            }
        }
    } catch (const Error& e) {
        ok = false;
        detail = e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    c.passed = ok;
    c.details = detail.empty() ? "13 rows refined in " + std::to_string(ms) + " ms" : detail;
    return c;
}

ReportCheck check_census(const Catalogue& cat) {
    ReportCheck c;
    c.name = "permutation census";
    std::set<std::string> want_curves, want_isolated;
    for (const auto& t : family_triples()) want_curves.insert(t.to_string());
    for (const auto& t : singular_triples()) want_isolated.insert(t.to_string());
    std::set<std::string> got_curves, got_isolated;
    for (const auto& s : cat.curve_triples()) got_curves.insert(s);
    for (const auto& s : cat.isolated_triples()) got_isolated.insert(s);
    c.passed = got_curves == want_curves && got_isolated == want_isolated;
    if (c.passed) {
        c.details = "6 curve triples, 15 isolated triples, none extra";
    } else {
        std::vector<std::string> missing, extra;
        for (const auto& s : want_curves)
            if (!got_curves.count(s)) missing.push_back(s + "(curve)");
        for (const auto& s : want_isolated)
            if (!got_isolated.count(s)) missing.push_back(s + "(isolated)");
        for (const auto& s : got_curves)
            if (!want_curves.count(s)) extra.push_back(s + "(curve)");
        for (const auto& s : got_isolated)
            if (!want_isolated.count(s)) extra.push_back(s + "(isolated)");
        c.details = "missing: [" + join(missing) + "] unexpected: [" + join(extra) + "]";
    }
    return c;
}

ReportCheck check_family_recovery(const Catalogue& cat) {
    ReportCheck c;
    c.name = "family-C recovery";
    const auto& curve_c = family_curve(FamilyName::C);
    double worst = 0.0;
    bool special_ok = false;
    std::set<std::string> fam_set;
    for (const auto& t : family_triples()) fam_set.insert(t.to_string());

    Poly2 eq1{{0, 2, 1}, {1, 0, 1}, {0, 0, -1}};              // y^2 + x - 1
    Poly2 eq2{{2, 0, 1}, {1, 0, -1}, {0, 1, -1}, {0, 0, 1}};  // x^2 - x - y + 1

    double special_residual = 1e300;
    for (const auto& r : cat.results) {
        if (fam_set.count(r.triple.to_string())) {
            for (const auto& curve : r.solutions.curves)
                for (const auto& p : curve.canonical)
                    worst = std::max(worst, std::fabs(curve_residual(curve_c, p.x, p.y)));
        }
        for (const auto& iso : r.solutions.isolated) {
            if (iso.special) {
                special_ok = true;
                double r1 = std::fabs(eq1.eval(iso.canonical.x, iso.canonical.y));
                double r2 = std::fabs(eq2.eval(iso.canonical.x, iso.canonical.y));
                special_residual = std::min(special_residual, std::max(r1, r2));
            }
        }
    }
    c.passed = worst < 1e-8 && special_ok && special_residual < 1e-10;
    c.details = "max |y-(x^2-x+1)| over traced points = " + std::to_string(worst) +
                (special_ok ? ", distinguished point recovered" : ", distinguished point missing");
    return c;
}

ReportCheck check_constructions() {
    ReportCheck c;
    c.name = "construction verification";
    bool ok = true;
    std::string detail;
    auto expect = [&](const Dissection& d, const std::string& what) {
        auto rep = verify(d, 1e-9);
        if (!rep.passed) {
            ok = false;
            detail += what + " failed; ";
        }
    };
    try {
        for (int i = 1; i <= 10; ++i) {
            double z = 0.1 * i;
            expect(trapezoid_A(z, {1.0 / 3, 1.0 / 3, 1.0 / 3}), "trapezoid-A z=" + std::to_string(z));
            expect(trapezoid_B(z), "trapezoid-B z=" + std::to_string(z));
            if (z < 0.95) expect(trapezoid_C(z), "trapezoid-C z=" + std::to_string(z));
        }
        for (int n = 3; n <= 8; ++n)
            expect(nonconvex_n_self_affine(n), "nonconvex n=" + std::to_string(n));
        SplitMix64 rng(12345);
        for (int i = 0; i < 50; ++i) {
            double x = rng.uniform(0.05, 0.9);
            double y = rng.uniform(0.05, 0.95 - x);
            int k = 1 + static_cast<int>(rng.below(5));
            expect(nonconvex_chain(x, y, k), "chain " + std::to_string(i));
        }
    } catch (const Error& e) {
        ok = false;
        detail += e.what();
    }
    c.passed = ok;
    c.details = detail.empty() ? "grids verified at 1e-9" : detail;
    return c;
}

ReportCheck check_glasscut(const Catalogue& cat, FamilyName fam1,
                           std::optional<FamilyName> fam2, const std::string& name) {
    ReportCheck c;
    c.name = name;
    double worst = 0.0;
    bool ok = true;
    auto point_ok = [&](const Point2& p) {
        double r1 = std::fabs(curve_residual(family_curve(fam1), p.x, p.y));
        double best = r1;
        if (fam2) best = std::min(best, std::fabs(curve_residual(family_curve(*fam2), p.x, p.y)));
        worst = std::max(worst, best);
        return best < 1e-8;
    };
    for (const auto& r : cat.results) {
        for (const auto& curve : r.solutions.curves) {
            std::size_t stride = std::max<std::size_t>(1, curve.canonical.size() / 200);
            for (std::size_t i = 0; i < curve.canonical.size(); i += stride)
                if (!point_ok(curve.canonical[i])) ok = false;
        }
        for (const auto& iso : r.solutions.isolated)
            if (!point_ok(iso.canonical)) ok = false;
    }
    c.passed = ok;
    c.details = "max family residual = " + std::to_string(worst);
    return c;
}

}  // namespace

ReproductionReport report_reproduction(const Catalogue& catalogue_c, const Catalogue* catalogue_a,
                                       const Catalogue* catalogue_b, double newton_target) {
    ReproductionReport rep;
    rep.checks.push_back(check_table1(newton_target));
    rep.checks.push_back(check_census(catalogue_c));
    rep.checks.push_back(check_family_recovery(catalogue_c));
    rep.checks.push_back(check_constructions());
    if (catalogue_a)
        rep.checks.push_back(
            check_glasscut(*catalogue_a, FamilyName::A, std::nullopt, "glass-cut A recovery"));
    if (catalogue_b)
        rep.checks.push_back(
            check_glasscut(*catalogue_b, FamilyName::B1, FamilyName::B2, "glass-cut B recovery"));
    return rep;
}

std::string report_to_json(const ReproductionReport& r) {
    JsonWriter w;
    w.begin_object();
    w.key("passed").value(r.all_passed());
    w.key("criteria").begin_array();
    for (const auto& c : r.checks) {
        w.begin_object();
        w.key("name").value(c.name);
        w.key("passed").value(c.passed);
        w.key("details").value(c.details);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

}  // namespace selfaffine
