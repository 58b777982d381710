#include "selfaffine/dissection_io.hpp"

#include <json.hpp>

#include "selfaffine/json_writer.hpp"

namespace selfaffine {

namespace {

void write_points(JsonWriter& w, const std::array<Point2, 4>& v) {
    w.begin_array();
    for (const auto& p : v) {
        w.begin_array().value(p.x).value(p.y).end_array();
    }
    w.end_array();
}

std::array<Point2, 4> read_points(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 4) throw ParseError("expected 4 vertices");
    std::array<Point2, 4> v{};
    for (int i = 0; i < 4; ++i) {
        const auto& e = j[i];
        if (!e.is_array() || e.size() != 2) throw ParseError("vertex must be [x, y]");
        v[i] = {e[0].get<double>(), e[1].get<double>()};
    }
    return v;
}

}  // namespace

std::string dissection_to_json(const Dissection& d) {
    JsonWriter w;
    w.begin_object();
    w.key("parent");
    write_points(w, d.parent.v);
    if (d.source_override) {
        w.key("source");
        write_points(w, d.source_override->v);
    }
    w.key("pieces").begin_array();
    for (const auto& p : d.pieces) {
        w.begin_object();
        w.key("vertices");
        write_points(w, p.quad.v);
        w.key("map").begin_array();
        w.value(p.map.a11).value(p.map.a12).value(p.map.a21).value(p.map.a22);
        w.value(p.map.a13).value(p.map.a23);
        w.end_array();
        w.key("perm").value(p.corr.to_string());
        w.end_object();
    }
    w.end_array();
    w.key("ctype").value(to_string(d.ctype));
    w.end_object();
    return w.str();
}

Dissection dissection_from_json(const std::string& json) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json);
    } catch (const std::exception& e) {
        throw ParseError(std::string("dissection JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("dissection JSON must be an object");

    Dissection d;
    try {
        d.parent = make_quadrangle(read_points(j.at("parent")));
        if (j.contains("source")) d.source_override = make_quadrangle(read_points(j.at("source")));
        for (const auto& pj : j.at("pieces")) {
            DissectionPiece p;
            p.quad = make_quadrangle(read_points(pj.at("vertices")));
            const auto& m = pj.at("map");
            if (!m.is_array() || m.size() != 6) throw ParseError("map must have 6 entries");
            p.map = {m[0].get<double>(), m[1].get<double>(), m[2].get<double>(),
                     m[3].get<double>(), m[4].get<double>(), m[5].get<double>()};
            p.corr = VertexCorrespondence::from_string(pj.at("perm").get<std::string>());
            d.pieces.push_back(p);
        }
        auto ct = ctype_from_string(j.value("ctype", "other"));
        if (!ct) throw ParseError("unknown ctype");
        d.ctype = *ct;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("dissection JSON: ") + e.what());
    }
    return d;
}

}  // namespace selfaffine
