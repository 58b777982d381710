#include "selfaffine/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace selfaffine {

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000") s = "0.000000";
    return s;
}

struct Bounds {
    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    void add(Point2 p) {
        minx = std::min(minx, p.x);
        miny = std::min(miny, p.y);
        maxx = std::max(maxx, p.x);
        maxy = std::max(maxy, p.y);
    }
};

std::string svg_header(const Bounds& b, const RenderOptions& opts) {
    double w = b.maxx - b.minx, h = b.maxy - b.miny;
    double mx = w * opts.margin_fraction, my = h * opts.margin_fraction;
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(opts.width) + "\" height=\"" + std::to_string(opts.height) +
                      "\" viewBox=\"" + num(b.minx - mx) + " " + num(-(b.maxy + my)) + " " +
                      num(w + 2 * mx) + " " + num(h + 2 * my) + "\">\n";
    // Single flip to mathematical orientation; everything below works in
    // world coordinates with y negated by the group transform.
    out += "<g transform=\"scale(1,-1)\">\n";
    return out;
}

std::string path_of(const std::array<Point2, 4>& v) {
    std::string d = "M " + num(v[0].x) + " " + num(v[0].y);
    for (int i = 1; i < 4; ++i) d += " L " + num(v[i].x) + " " + num(v[i].y);
    d += " Z";
    return d;
}

}  // namespace

std::string render_dissection(const Dissection& d, const RenderOptions& opts) {
    auto rep = verify(d);
    if (!rep.passed) throw UnverifiedDissection("render_dissection requires a verified dissection");

    Bounds b;
    for (const auto& v : d.parent.v) b.add(v);
    for (const auto& p : d.pieces)
        for (const auto& v : p.quad.v) b.add(v);

    double scale = std::max(b.maxx - b.minx, b.maxy - b.miny);
    double stroke = scale / 480.0;

    std::string out = svg_header(b, opts);
    static const char* fills[] = {"#dce8f5", "#f5e3d7", "#e3f0da", "#efe0ef",
                                  "#f3efd0", "#d8eef0", "#eadfd2", "#e0e4ee"};
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        out += "<path d=\"" + path_of(d.pieces[i].quad.v) + "\" fill=\"" +
               fills[i % 8] + "\" stroke=\"#555555\" stroke-width=\"" +
               num(stroke * opts.cut_width) + "\"/>\n";
    }
    out += "<path d=\"" + path_of(d.parent.v) + "\" fill=\"none\" stroke=\"#000000\" " +
           "stroke-width=\"" + num(stroke * opts.outline_width) + "\"/>\n";

    if (opts.labels == LabelMode::VertexNumbers) {
        double fs = 0.05 * scale;
        for (const auto& p : d.pieces) {
            Point2 c = p.quad.centroid();
            for (int i = 0; i < 4; ++i) {
                Point2 at = p.quad.v[p.corr(i)];
                Point2 pos = at + (c - at) * 0.18;
                // Text is written in an un-flipped frame so digits stay upright.
                out += "<text x=\"" + num(pos.x) + "\" y=\"" + num(-pos.y) +
                       "\" transform=\"scale(1,-1)\" font-size=\"" + num(fs) +
                       "\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"#333333\">" +
                       std::to_string(i + 1) + "</text>\n";
            }
        }
    }

    out += "</g>\n</svg>\n";
    return out;
}

std::string render_parameter_chart(const Catalogue& cat, const RenderOptions& opts) {
    Bounds b;
    b.add({0.0, 0.45});
    b.add({1.05, 1.05});

    std::string out = svg_header(b, opts);
    double stroke = 1.0 / 480.0;

    // Region boundary: x+y=1 from (0,1) to (1/2,1/2), x=y up to (1,1), y=1
    // back to (0,1).
    out += "<path d=\"M " + num(0.0) + " " + num(1.0) + " L " + num(0.5) + " " + num(0.5) +
           " L " + num(1.0) + " " + num(1.0) + " L " + num(0.0) + " " + num(1.0) +
           " Z\" fill=\"none\" stroke=\"#888888\" stroke-width=\"" + num(stroke) +
           "\" stroke-dasharray=\"" + num(0.01) + "," + num(0.01) + "\"/>\n";

    // One polyline per family present in the catalogue.
    std::set<FamilyName> families;
    for (const auto& r : cat.results) {
        for (const auto& c : r.solutions.curves)
            if (c.family) families.insert(*c.family);
        if (!r.solutions.trapezoidal.empty()) families.insert(FamilyName::T);
    }
    static const char* family_color[] = {"#000000", "#b03030", "#2f6fb0", "#2f8f50", "#8050a0"};
    for (FamilyName f : families) {
        auto pts = sample_curve(f, 400);
        if (pts.empty()) continue;
        std::string dattr = "M " + num(pts[0].x) + " " + num(pts[0].y);
        for (std::size_t i = 1; i < pts.size(); ++i)
            dattr += " L " + num(pts[i].x) + " " + num(pts[i].y);
        out += "<path class=\"family-" + to_string(f) + "\" d=\"" + dattr +
               "\" fill=\"none\" stroke=\"" + family_color[static_cast<int>(f)] +
               "\" stroke-width=\"" + num(2 * stroke) + "\"/>\n";
    }

    // Dots for isolated solutions off every drawn curve, deduplicated.
    std::vector<Point2> dots;
    for (const auto& r : cat.results) {
        for (const auto& iso : r.solutions.isolated) {
            bool on_curve = false;
            for (FamilyName f : families)
                if (curve_distance(family_curve(f), iso.canonical.x, iso.canonical.y) < 1e-5)
                    on_curve = true;
            if (on_curve) continue;
            bool dup = false;
            for (const auto& d : dots)
                if (distance(d, iso.canonical) < 1e-5) dup = true;
            if (!dup) dots.push_back(iso.canonical);
        }
    }
    std::sort(dots.begin(), dots.end(), [](Point2 a, Point2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    for (const auto& d : dots)
        out += "<circle cx=\"" + num(d.x) + "\" cy=\"" + num(d.y) + "\" r=\"" + num(0.007) +
               "\" fill=\"#202020\"/>\n";

    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace selfaffine
