#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "selfaffine/constructions.hpp"
#include "selfaffine/dissection_io.hpp"
#include "selfaffine/families.hpp"
#include "selfaffine/json_writer.hpp"
#include "selfaffine/render.hpp"
#include "selfaffine/solver.hpp"
#include "selfaffine/solver_io.hpp"

using namespace selfaffine;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitVerificationFailure = 2;
constexpr int kExitUsage = 64;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParams("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& data, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << data;
        if (!data.empty() && data.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw InvalidParams("cannot write " + out_path);
        out << data;
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CommonOpts {
    double tolerance = 1e-9;
    std::string out;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classification toolkit for quadrangles dissected into three affine copies"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--tolerance", common.tolerance, "geometric tolerance")
        ->check(CLI::Range(1e-300, 1e-3));

    // classify
    double cx = 0, cy = 0;
    auto* cmd_classify = app.add_subcommand("classify", "shape class of the affine type (x, y)");
    cmd_classify->add_option("--x", cx)->required();
    cmd_classify->add_option("--y", cy)->required();
    cmd_classify->add_option("--out", common.out);

    // normalize
    double nx = 0, ny = 0;
    auto* cmd_normalize =
        app.add_subcommand("normalize", "canonical parameters in the region P");
    cmd_normalize->add_option("--x", nx)->required();
    cmd_normalize->add_option("--y", ny)->required();
    cmd_normalize->add_option("--out", common.out);

    // member
    double mx = 0, my = 0, mtol = 1e-6;
    auto* cmd_member = app.add_subcommand("member", "solution families containing (x, y)");
    cmd_member->add_option("--x", mx)->required();
    cmd_member->add_option("--y", my)->required();
    cmd_member->add_option("--tol", mtol, "membership tolerance");
    cmd_member->add_option("--out", common.out);

    // sample
    std::string sample_curve_name = "C";
    int sample_n = 10;
    std::string sample_format = "json";
    auto* cmd_sample = app.add_subcommand("sample", "points on a family curve");
    cmd_sample->add_option("--curve", sample_curve_name, "T, A, B1, B2 or C");
    cmd_sample->add_option("--n", sample_n)->check(CLI::PositiveNumber);
    cmd_sample->add_option("--format", sample_format)->check(CLI::IsMember({"json", "csv"}));
    cmd_sample->add_option("--out", common.out);

    // table1
    std::string table_format = "csv";
    auto* cmd_table = app.add_subcommand("table1", "the 13 isolated affine types");
    cmd_table->add_option("--format", table_format)->check(CLI::IsMember({"json", "csv"}));
    cmd_table->add_option("--out", common.out);

    // sweep
    std::string sweep_template = "c";
    std::uint64_t sweep_seed = 0;
    int sweep_starts = 2000;
    int sweep_jobs = 0;
    auto* cmd_sweep = app.add_subcommand("sweep", "solve all 512 permutation systems");
    cmd_sweep->add_option("--template", sweep_template)->check(CLI::IsMember({"a", "b", "c"}));
    cmd_sweep->add_option("--seed", sweep_seed);
    cmd_sweep->add_option("--starts", sweep_starts)->check(CLI::PositiveNumber);
    cmd_sweep->add_option("--jobs", sweep_jobs, "worker threads (0 = hardware)");
    cmd_sweep->add_option("--out", common.out);

    // construct
    auto* cmd_construct = app.add_subcommand("construct", "explicit dissections");
    cmd_construct->require_subcommand(1);
    double tz = 0.5;
    std::vector<double> tweights{1.0 / 3, 1.0 / 3, 1.0 / 3};
    auto* c_ta = cmd_construct->add_subcommand("trapezoid-a", "three parallel strips");
    c_ta->add_option("--z", tz)->required();
    c_ta->add_option("--weights", tweights, "three positive weights summing to 1")
        ->expected(3);
    c_ta->add_option("--out", common.out);
    double tbz = 0.5;
    auto* c_tb = cmd_construct->add_subcommand("trapezoid-b", "full cut plus sub-cut");
    c_tb->add_option("--z", tbz)->required();
    c_tb->add_option("--out", common.out);
    double tcz = 0.5;
    auto* c_tc = cmd_construct->add_subcommand("trapezoid-c", "interior-vertex dissection");
    c_tc->add_option("--z", tcz)->required();
    c_tc->add_option("--out", common.out);
    int ncn = 3;
    auto* c_nc = cmd_construct->add_subcommand("nonconvex", "n-piece non-convex self-affinity");
    c_nc->add_option("--n", ncn)->required()->check(CLI::Range(3, 64));
    c_nc->add_option("--out", common.out);

    // verify
    std::string verify_in;
    auto* cmd_verify = app.add_subcommand("verify", "check a dissection JSON file");
    cmd_verify->add_option("--in", verify_in)->required();
    cmd_verify->add_option("--out", common.out);

    // render
    std::string render_in, render_chart;
    bool render_labels = false;
    auto* cmd_render = app.add_subcommand("render", "SVG output");
    auto* opt_render_in = cmd_render->add_option("--in", render_in, "dissection JSON");
    cmd_render->add_option("--chart", render_chart, "catalogue JSON for a parameter chart")
        ->excludes(opt_render_in);
    cmd_render->add_flag("--labels", render_labels, "vertex-number labels");
    cmd_render->add_option("--out", common.out);

    // realizations
    bool realizations_special = false;
    std::uint64_t realizations_seed = 0;
    int realizations_starts = 800;
    auto* cmd_real = app.add_subcommand(
        "realizations", "the eight dissections of the distinguished quadrangle");
    cmd_real->add_flag("--special", realizations_special);
    cmd_real->add_option("--seed", realizations_seed);
    cmd_real->add_option("--starts", realizations_starts)->check(CLI::PositiveNumber);
    cmd_real->add_option("--out", common.out);

    // report
    std::string report_c, report_a, report_b;
    double report_newton_target = 1e-12;
    auto* cmd_report = app.add_subcommand("report", "reproduction summary against catalogues");
    cmd_report->add_option("--catalogue", report_c, "template-C catalogue JSON")->required();
    cmd_report->add_option("--catalogue-a", report_a, "template-A catalogue JSON");
    cmd_report->add_option("--catalogue-b", report_b, "template-B catalogue JSON");
    cmd_report->add_option("--newton-target", report_newton_target,
                           "residual target for the singular-table refinement");
    cmd_report->add_option("--out", common.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cmd_classify) {
            auto canon = normalize_to_P(cx, cy, common.tolerance);
            auto shape = classify_shape(cx, cy, common.tolerance);
            JsonWriter w;
            w.begin_object();
            w.key("shape").value(to_string(shape));
            w.key("region").value(to_string(canon.input_region));
            w.key("canonical").begin_object();
            w.key("x").value(canon.params.x);
            w.key("y").value(canon.params.y);
            w.end_object();
            w.end_object();
            emit(w.str(), common.out);
        } else if (*cmd_normalize) {
            auto canon = normalize_to_P(nx, ny, common.tolerance);
            JsonWriter w;
            w.begin_object();
            w.key("x").value(canon.params.x);
            w.key("y").value(canon.params.y);
            w.key("region").value(to_string(canon.input_region));
            w.key("substitution").value(to_string(canon.applied));
            w.end_object();
            emit(w.str(), common.out);
        } else if (*cmd_member) {
            Membership m = is_member(mx, my, mtol);
            JsonWriter w;
            w.begin_object();
            w.key("families").begin_array();
            for (auto f : m.families) w.value(to_string(f));
            for (int id : m.singular_ids) w.value("S" + std::to_string(id));
            w.end_array();
            if (m.special) w.key("special").value(true);
            w.end_object();
            emit(w.str(), common.out);
        } else if (*cmd_sample) {
            auto fam = family_from_string(sample_curve_name);
            if (!fam) throw InvalidParams("unknown curve " + sample_curve_name);
            auto pts = sample_curve(*fam, sample_n);
            if (sample_format == "csv") {
                std::string csv = "x,y\n";
                for (const auto& p : pts) csv += fmt17(p.x) + "," + fmt17(p.y) + "\n";
                emit(csv, common.out);
            } else {
                JsonWriter w;
                w.begin_array();
                for (const auto& p : pts) w.begin_array().value(p.x).value(p.y).end_array();
                w.end_array();
                emit(w.str(), common.out);
            }
        } else if (*cmd_table) {
            const auto& rows = table1_solutions();
            if (table_format == "csv") {
                std::string csv = "id,eq1,eq2,x,y,closed_form\n";
                for (const auto& s : rows) {
                    csv += std::to_string(s.id) + "," + s.eq1.to_string() + "," +
                           s.eq2.to_string() + "," + fmt17(s.value.x) + "," + fmt17(s.value.y) +
                           "," + s.closed_form + "\n";
                }
                emit(csv, common.out);
            } else {
                JsonWriter w;
                w.begin_array();
                for (const auto& s : rows) {
                    w.begin_object();
                    w.key("id").value(s.id);
                    w.key("eq1").value(s.eq1.to_string());
                    w.key("eq2").value(s.eq2.to_string());
                    w.key("x").value(s.value.x);
                    w.key("y").value(s.value.y);
                    w.key("closed_form").value(s.closed_form);
                    w.end_object();
                }
                w.end_array();
                emit(w.str(), common.out);
            }
        } else if (*cmd_sweep) {
            SolverConfig cfg;
            cfg.seed = sweep_seed;
            cfg.starts = sweep_starts;
            cfg.jobs = sweep_jobs;
            cfg.verify_tol = common.tolerance;
            auto tk = template_from_string(sweep_template);
            Catalogue cat = sweep_all(*tk, cfg);
            emit(catalogue_to_json(cat), common.out);
        } else if (*cmd_construct) {
            Dissection d;
            if (*c_ta) {
                d = trapezoid_A(tz, {tweights[0], tweights[1], tweights[2]}, common.tolerance);
            } else if (*c_tb) {
                d = trapezoid_B(tbz, common.tolerance);
            } else if (*c_tc) {
                d = trapezoid_C(tcz, common.tolerance);
            } else {
                d = nonconvex_n_self_affine(ncn, common.tolerance);
            }
            if (!verify(d, common.tolerance).passed)
                throw VerificationFailure("construction failed verification");
            emit(dissection_to_json(d), common.out);
        } else if (*cmd_verify) {
            Dissection d = dissection_from_json(read_file(verify_in));
            auto rep = verify(d, common.tolerance);
            JsonWriter w;
            w.begin_object();
            w.key("passed").value(rep.passed);
            w.key("area_defect").value(rep.area_defect);
            w.key("max_affine_residual").value(rep.max_affine_residual);
            w.key("disjointness_violations").begin_array();
            for (const auto& s : rep.disjointness_violations) w.value(s);
            w.end_array();
            w.key("coverage_violations").begin_array();
            for (const auto& s : rep.coverage_violations) w.value(s);
            w.end_array();
            w.end_object();
            emit(w.str(), common.out);
            if (!rep.passed) return kExitVerificationFailure;
        } else if (*cmd_render) {
            RenderOptions opts;
            if (render_labels) opts.labels = LabelMode::VertexNumbers;
            if (!render_chart.empty()) {
                Catalogue cat = catalogue_from_json(read_file(render_chart));
                emit(render_parameter_chart(cat, opts), common.out);
            } else if (!render_in.empty()) {
                Dissection d = dissection_from_json(read_file(render_in));
                emit(render_dissection(d, opts), common.out);
            } else {
                throw InvalidParams("render needs --in or --chart");
            }
        } else if (*cmd_real) {
            if (!realizations_special)
                throw InvalidParams("realizations requires --special");
            SolverConfig cfg;
            cfg.seed = realizations_seed;
            cfg.starts = realizations_starts;
            cfg.jobs = 0;
            auto all = special_quadrangle_realizations(cfg);
            std::string out = "[";
            for (std::size_t i = 0; i < all.size(); ++i) {
                if (i) out += ",";
                out += dissection_to_json(all[i]);
            }
            out += "]";
            emit(out, common.out);
        } else if (*cmd_report) {
            Catalogue cat_c = [&] {
                try {
                    return catalogue_from_json(read_file(report_c));
                } catch (const InvalidParams& e) {
                    throw MissingCatalogue(e.what());
                }
            }();
            std::optional<Catalogue> cat_a, cat_b;
            if (!report_a.empty()) cat_a = catalogue_from_json(read_file(report_a));
            if (!report_b.empty()) cat_b = catalogue_from_json(read_file(report_b));
            auto rep = report_reproduction(cat_c, cat_a ? &*cat_a : nullptr,
                                           cat_b ? &*cat_b : nullptr, report_newton_target);
            emit(report_to_json(rep), common.out);
            for (const auto& c : rep.checks)
                std::cerr << (c.passed ? "PASS" : "FAIL") << " " << c.name << ": " << c.details
                          << "\n";
            if (!rep.all_passed()) return kExitVerificationFailure;
        }
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
    return kExitOk;
}
