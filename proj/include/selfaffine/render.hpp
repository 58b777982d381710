#pragma once

#include <string>

#include "selfaffine/dissection.hpp"
#include "selfaffine/solver.hpp"

namespace selfaffine {

enum class LabelMode { None, VertexNumbers };

struct RenderOptions {
    int width = 480;
    int height = 480;
    double margin_fraction = 0.08;
    double outline_width = 2.0;
    double cut_width = 1.0;
    LabelMode labels = LabelMode::None;
};

/// SVG drawing of a dissection: one path per piece plus the parent outline.
/// With vertex-number labels, each piece corner is annotated with the index
/// of the source vertex mapping onto it. Output is deterministic; requires
/// a dissection that passes verification (throws UnverifiedDissection).
std::string render_dissection(const Dissection& d, const RenderOptions& opts = {});

/// Chart of the canonical parameter region: its boundary, one polyline per
/// family curve present in the catalogue (sampled at 400 points), and one
/// dot per isolated solution that lies on no drawn curve.
std::string render_parameter_chart(const Catalogue& cat, const RenderOptions& opts = {});

}  // namespace selfaffine
