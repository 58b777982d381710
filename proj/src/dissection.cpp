#include "selfaffine/dissection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "selfaffine/affine_type.hpp"

namespace selfaffine {

namespace {

const std::array<std::array<int, 4>, 8> kDihedral = {{
    {0, 1, 2, 3},
    {1, 2, 3, 0},
    {2, 3, 0, 1},
    {3, 0, 1, 2},
    {0, 3, 2, 1},
    {1, 0, 3, 2},
    {2, 1, 0, 3},
    {3, 2, 1, 0},
}};

}  // namespace

VertexCorrespondence VertexCorrespondence::from_images(const std::array<int, 4>& images) {
    for (const auto& d : kDihedral) {
        if (d == images) {
            VertexCorrespondence c;
            c.images_ = images;
            return c;
        }
    }
    throw InvalidParams("vertex correspondence is not in the dihedral set");
}

VertexCorrespondence VertexCorrespondence::from_string(const std::string& s) {
    if (s.size() != 4) throw InvalidParams("correspondence string must have 4 digits");
    std::array<int, 4> img{};
    for (int i = 0; i < 4; ++i) {
        if (s[i] < '1' || s[i] > '4') throw InvalidParams("correspondence digits must be 1..4");
        img[i] = s[i] - '1';
    }
    return from_images(img);
}

const std::array<VertexCorrespondence, 8>& VertexCorrespondence::all() {
    static const std::array<VertexCorrespondence, 8> table = [] {
        std::array<VertexCorrespondence, 8> t{};
        for (int i = 0; i < 8; ++i) t[i] = from_images(kDihedral[i]);
        return t;
    }();
    return table;
}

std::string VertexCorrespondence::to_string() const {
    std::string s;
    for (int i : images_) s += static_cast<char>('1' + i);
    return s;
}

std::string to_string(CombinatorialType t) {
    switch (t) {
        case CombinatorialType::A: return "A";
        case CombinatorialType::B: return "B";
        case CombinatorialType::C: return "C";
        case CombinatorialType::Other: return "other";
    }
    return "?";
}

std::optional<CombinatorialType> ctype_from_string(const std::string& s) {
    if (s == "A") return CombinatorialType::A;
    if (s == "B") return CombinatorialType::B;
    if (s == "C") return CombinatorialType::C;
    if (s == "other") return CombinatorialType::Other;
    return std::nullopt;
}

VerificationReport verify(const Dissection& d, double tol) {
    VerificationReport rep;
    if (d.pieces.empty()) {
        rep.coverage_violations.push_back("no pieces");
        return rep;
    }
    const auto& src = d.source();
    const auto& parent = d.parent;
    double parent_area = polygon_area(parent.v);
    if (parent_area <= 0.0) {
        rep.coverage_violations.push_back("parent has zero area");
        return rep;
    }

    // (a) affine-copy property per piece.
    double piece_area_sum = 0.0;
    for (std::size_t k = 0; k < d.pieces.size(); ++k) {
        const auto& p = d.pieces[k];
        if (std::fabs(p.map.det()) < 1e-12)
            rep.coverage_violations.push_back("piece " + std::to_string(k) +
                                              ": near-singular map");
        for (int i = 0; i < 4; ++i) {
            Point2 expected = p.map(src.v[i]);
            double r = distance(expected, p.quad.v[p.corr(i)]);
            rep.max_affine_residual = std::max(rep.max_affine_residual, r);
        }
        piece_area_sum += polygon_area(p.quad.v);
    }

    // (b) area additivity, relative to the parent.
    rep.area_defect = std::fabs(piece_area_sum - parent_area) / parent_area;

    // Snap all vertices so shared corners get one identity.
    std::vector<Point2> snapped;
    auto snap_id = [&](Point2 p) -> int {
        for (std::size_t i = 0; i < snapped.size(); ++i)
            if (distance(snapped[i], p) <= 10.0 * tol) return static_cast<int>(i);
        snapped.push_back(p);
        return static_cast<int>(snapped.size()) - 1;
    };
    std::vector<std::array<int, 4>> piece_ids(d.pieces.size());
    for (std::size_t k = 0; k < d.pieces.size(); ++k)
        for (int i = 0; i < 4; ++i) piece_ids[k][i] = snap_id(d.pieces[k].quad.v[i]);

    // (c) disjoint interiors: proper edge crossings and centroid containment.
    for (std::size_t a = 0; a < d.pieces.size(); ++a) {
        for (std::size_t b = a + 1; b < d.pieces.size(); ++b) {
            for (int i = 0; i < 4; ++i) {
                int ia0 = piece_ids[a][i], ia1 = piece_ids[a][(i + 1) % 4];
                Point2 a0 = d.pieces[a].quad.v[i];
                Point2 a1 = d.pieces[a].quad.v[(i + 1) % 4];
                for (int j = 0; j < 4; ++j) {
                    int ib0 = piece_ids[b][j], ib1 = piece_ids[b][(j + 1) % 4];
                    if (ia0 == ib0 || ia0 == ib1 || ia1 == ib0 || ia1 == ib1) continue;
                    Point2 b0 = d.pieces[b].quad.v[j];
                    Point2 b1 = d.pieces[b].quad.v[(j + 1) % 4];
                    if (segments_cross_properly(a0, a1, b0, b1, tol))
                        rep.disjointness_violations.push_back(
                            "edges of pieces " + std::to_string(a) + " and " +
                            std::to_string(b) + " cross");
                }
            }
        }
    }
    // Probe points guaranteed interior to their piece: the area centroid for
    // convex pieces, and the centroids of the two triangles split off by the
    // inner diagonal for reflex pieces (whose area centroid may fall in the
    // notch).
    auto probe_points = [](const Quadrangle& q) {
        std::vector<Point2> pts;
        if (q.kind == QuadKind::NonConvex && q.reflex >= 0) {
            int r = q.reflex;
            pts.push_back((q.v[r] + q.v[(r + 1) % 4] + q.v[(r + 2) % 4]) * (1.0 / 3.0));
            pts.push_back((q.v[r] + q.v[(r + 2) % 4] + q.v[(r + 3) % 4]) * (1.0 / 3.0));
        } else {
            pts.push_back(q.centroid());
        }
        return pts;
    };
    for (std::size_t a = 0; a < d.pieces.size(); ++a) {
        for (Point2 c : probe_points(d.pieces[a].quad)) {
            for (std::size_t b = 0; b < d.pieces.size(); ++b) {
                if (a == b) continue;
                if (point_strictly_inside(c, d.pieces[b].quad.v, tol))
                    rep.disjointness_violations.push_back(
                        "interior point of piece " + std::to_string(a) + " inside piece " +
                        std::to_string(b));
            }
        }
    }

    // (d) containment in the parent.
    for (std::size_t k = 0; k < d.pieces.size(); ++k)
        for (int i = 0; i < 4; ++i)
            if (!point_in_quadrangle(d.pieces[k].quad.v[i], parent.v, 100.0 * tol))
                rep.coverage_violations.push_back("piece " + std::to_string(k) + " vertex " +
                                                  std::to_string(i + 1) + " outside parent");

    rep.passed = rep.max_affine_residual <= tol && rep.area_defect <= tol &&
                 rep.disjointness_violations.empty() && rep.coverage_violations.empty();
    return rep;
}

namespace {

struct CutGraph {
    std::vector<Point2> points;
    std::vector<std::array<int, 2>> cuts;  // interior (non-boundary) segments
};

// Builds the planar cut structure of a dissection: piece edges that do not
// run along the parent boundary, split at incident vertices and merged back
// across straight T-junction points into maximal straight cuts.
CutGraph build_cut_graph(const Dissection& d, double tol) {
    CutGraph g;
    double snap = 10.0 * tol;
    auto point_id = [&](Point2 p) -> int {
        for (std::size_t i = 0; i < g.points.size(); ++i)
            if (distance(g.points[i], p) <= snap) return static_cast<int>(i);
        g.points.push_back(p);
        return static_cast<int>(g.points.size()) - 1;
    };

    for (int i = 0; i < 4; ++i) point_id(d.parent.v[i]);
    for (const auto& p : d.pieces)
        for (int i = 0; i < 4; ++i) point_id(p.quad.v[i]);

    auto on_parent_boundary = [&](Point2 p) {
        for (int i = 0; i < 4; ++i)
            if (segment_distance(p, d.parent.v[i], d.parent.v[(i + 1) % 4]) <= snap) return true;
        return false;
    };

    std::vector<std::array<int, 2>> raw;
    for (const auto& p : d.pieces) {
        for (int i = 0; i < 4; ++i) {
            Point2 a = p.quad.v[i], b = p.quad.v[(i + 1) % 4];
            Point2 mid = (a + b) * 0.5;
            Point2 q1 = a + (b - a) * 0.25;
            Point2 q3 = a + (b - a) * 0.75;
            bool boundary = on_parent_boundary(a) && on_parent_boundary(b) &&
                            on_parent_boundary(mid) && on_parent_boundary(q1) &&
                            on_parent_boundary(q3);
            if (!boundary) raw.push_back({point_id(a), point_id(b)});
        }
    }

    // Split segments at snapped points lying in their interior.
    std::vector<std::array<int, 2>> split;
    for (auto seg : raw) {
        Point2 a = g.points[seg[0]], b = g.points[seg[1]];
        std::vector<std::pair<double, int>> stops{{0.0, seg[0]}, {1.0, seg[1]}};
        Point2 ab = b - a;
        double len2 = std::max(ab.norm2(), 1e-300);
        for (std::size_t i = 0; i < g.points.size(); ++i) {
            int id = static_cast<int>(i);
            if (id == seg[0] || id == seg[1]) continue;
            if (segment_distance(g.points[i], a, b) <= snap) {
                double t = (g.points[i] - a).dot(ab) / len2;
                if (t > 1e-9 && t < 1.0 - 1e-9) stops.push_back({t, id});
            }
        }
        std::sort(stops.begin(), stops.end());
        for (std::size_t i = 0; i + 1 < stops.size(); ++i)
            split.push_back({stops[i].second, stops[i + 1].second});
    }

    // Deduplicate undirected segments.
    std::vector<std::array<int, 2>> segs;
    for (auto s : split) {
        if (s[0] > s[1]) std::swap(s[0], s[1]);
        if (s[0] == s[1]) continue;
        if (std::find(segs.begin(), segs.end(), s) == segs.end()) segs.push_back(s);
    }

    // Merge straight pairs at shared endpoints (restores full glass cuts that
    // T-junctions split).
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t pi = 0; pi < g.points.size() && !changed; ++pi) {
            int pid = static_cast<int>(pi);
            std::vector<std::size_t> inc;
            for (std::size_t si = 0; si < segs.size(); ++si)
                if (segs[si][0] == pid || segs[si][1] == pid) inc.push_back(si);
            for (std::size_t i = 0; i < inc.size() && !changed; ++i) {
                for (std::size_t j = i + 1; j < inc.size() && !changed; ++j) {
                    auto sa = segs[inc[i]], sb = segs[inc[j]];
                    int other_a = (sa[0] == pid) ? sa[1] : sa[0];
                    int other_b = (sb[0] == pid) ? sb[1] : sb[0];
                    if (other_a == other_b) continue;
                    Point2 da = g.points[other_a] - g.points[pid];
                    Point2 db = g.points[other_b] - g.points[pid];
                    double cr = da.cross(db) / std::max(da.norm() * db.norm(), 1e-300);
                    double dt = da.dot(db);
                    if (std::fabs(cr) <= 1e-7 && dt < 0.0) {
                        std::array<int, 2> merged{std::min(other_a, other_b),
                                                  std::max(other_a, other_b)};
                        segs.erase(segs.begin() + static_cast<long>(inc[j]));
                        segs.erase(segs.begin() + static_cast<long>(inc[i]));
                        if (std::find(segs.begin(), segs.end(), merged) == segs.end())
                            segs.push_back(merged);
                        changed = true;
                    }
                }
            }
        }
    }

    g.cuts = segs;
    return g;
}

}  // namespace

CombinatorialType combinatorial_type(const Dissection& d, double tol) {
    if (d.pieces.size() != 3) throw NotThreePieces("combinatorial_type requires 3 pieces");

    CutGraph g = build_cut_graph(d, tol);
    double snap = 10.0 * tol;

    auto boundary_dist = [&](Point2 p) {
        double best = 1e300;
        for (int i = 0; i < 4; ++i)
            best = std::min(best, segment_distance(p, d.parent.v[i], d.parent.v[(i + 1) % 4]));
        return best;
    };
    auto on_boundary = [&](int id) { return boundary_dist(g.points[id]) <= snap; };
    auto side_of = [&](int id) -> int {  // -1 when at a parent vertex or off-boundary
        Point2 p = g.points[id];
        for (int i = 0; i < 4; ++i)
            if (distance(p, d.parent.v[i]) <= snap) return -1;
        for (int i = 0; i < 4; ++i)
            if (segment_distance(p, d.parent.v[i], d.parent.v[(i + 1) % 4]) <= snap) return i;
        return -1;
    };

    const auto& cuts = g.cuts;
    if (cuts.size() == 2) {
        bool b00 = on_boundary(cuts[0][0]), b01 = on_boundary(cuts[0][1]);
        bool b10 = on_boundary(cuts[1][0]), b11 = on_boundary(cuts[1][1]);
        bool share = cuts[0][0] == cuts[1][0] || cuts[0][0] == cuts[1][1] ||
                     cuts[0][1] == cuts[1][0] || cuts[0][1] == cuts[1][1];
        if (b00 && b01 && b10 && b11 && !share) {
            int s0a = side_of(cuts[0][0]), s0b = side_of(cuts[0][1]);
            int s1a = side_of(cuts[1][0]), s1b = side_of(cuts[1][1]);
            bool opp0 = s0a >= 0 && s0b >= 0 && (s0a + 2) % 4 == s0b;
            bool opp1 = s1a >= 0 && s1b >= 0 && (s1a + 2) % 4 == s1b;
            if (opp0 && opp1) return CombinatorialType::A;
            return CombinatorialType::Other;
        }
        // One full cut plus one cut from a point of the full cut to the
        // boundary.
        for (int full = 0; full < 2; ++full) {
            int sub = 1 - full;
            bool full_ok = on_boundary(cuts[full][0]) && on_boundary(cuts[full][1]);
            if (!full_ok) continue;
            Point2 fa = g.points[cuts[full][0]], fb = g.points[cuts[full][1]];
            for (int e = 0; e < 2; ++e) {
                int attach = cuts[sub][e], free_end = cuts[sub][1 - e];
                Point2 ap = g.points[attach];
                bool on_full = segment_distance(ap, fa, fb) <= snap &&
                               distance(ap, fa) > snap && distance(ap, fb) > snap;
                if (on_full && on_boundary(free_end)) return CombinatorialType::B;
            }
        }
        return CombinatorialType::Other;
    }
    if (cuts.size() == 3) {
        // Count point incidences to find the common interior vertex.
        std::map<int, int> degree;
        for (const auto& c : cuts) {
            degree[c[0]]++;
            degree[c[1]]++;
        }
        int center = -1;
        int boundary_ends = 0;
        for (auto [id, deg] : degree) {
            if (deg == 3) center = id;
            if (deg == 1 && on_boundary(id)) ++boundary_ends;
        }
        if (center >= 0 && !on_boundary(center) && boundary_ends == 3)
            return CombinatorialType::C;
    }
    return CombinatorialType::Other;
}

Dissection refine(const Dissection& d, std::size_t piece_index, const Dissection& sub,
                  double tol) {
    if (piece_index >= d.pieces.size()) throw InvalidParams("refine: piece index out of range");
    if (!sub.is_self_affine())
        throw TypeMismatch("refine: sub-dissection must be a self-affinity");

    // Match d's source onto sub's parent over the eight orderings.
    const auto& src = d.source();
    std::optional<AffineMap2> match;
    for (const auto& corr : VertexCorrespondence::all()) {
        auto psi = try_affine_from_triples(
            {src.v[0], src.v[1], src.v[2]},
            {sub.parent.v[corr(0)], sub.parent.v[corr(1)], sub.parent.v[corr(2)]}, tol);
        if (!psi) continue;
        if (distance((*psi)(src.v[3]), sub.parent.v[corr(3)]) <= 1e-6) {
            match = psi;
            break;
        }
    }
    if (!match)
        throw TypeMismatch("refine: sub parent is not affinely congruent to the source");

    AffineMap2 psi_inv = invert(*match);
    const AffineMap2& host = d.pieces[piece_index].map;

    Dissection out;
    out.parent = d.parent;
    out.source_override = d.source_override;
    out.ctype = CombinatorialType::Other;
    for (std::size_t k = 0; k < d.pieces.size(); ++k)
        if (k != piece_index) out.pieces.push_back(d.pieces[k]);
    for (const auto& sp : sub.pieces) {
        AffineMap2 m = compose(host, compose(psi_inv, compose(sp.map, *match)));
        DissectionPiece np;
        np.map = m;
        np.corr = VertexCorrespondence();
        std::array<Point2, 4> verts{};
        for (int i = 0; i < 4; ++i) verts[i] = m(src.v[i]);
        np.quad = make_quadrangle(verts, tol);
        out.pieces.push_back(np);
    }
    return out;
}

std::vector<AffineMap2> normalizing_maps(const Quadrangle& q, double tol) {
    std::vector<AffineMap2> maps;
    if (q.kind == QuadKind::Degenerate)
        throw InvalidParams("normalizing_maps: degenerate quadrangle");

    const Point2 e1{0.0, 1.0}, e2{0.0, 0.0}, e3{1.0, 0.0};
    if (q.kind == QuadKind::Convex) {
        for (const auto& sigma : kDihedral) {
            auto tau = try_affine_from_triples(
                {q.v[sigma[0]], q.v[sigma[1]], q.v[sigma[2]]}, {e1, e2, e3}, tol);
            if (!tau) continue;
            Point2 c = (*tau)(q.v[sigma[3]]);
            if (c.x + c.y > 1.0 - tol && c.y <= 1.0 + tol && c.x <= c.y + tol)
                maps.push_back(*tau);
        }
    } else {
        int r = q.reflex;
        std::array<std::array<int, 4>, 2> orders = {{
            {(r + 1) % 4, (r + 2) % 4, (r + 3) % 4, r},
            {(r + 3) % 4, (r + 2) % 4, (r + 1) % 4, r},
        }};
        for (const auto& sigma : orders) {
            auto tau = try_affine_from_triples(
                {q.v[sigma[0]], q.v[sigma[1]], q.v[sigma[2]]}, {e1, e2, e3}, tol);
            if (!tau) continue;
            Point2 c = (*tau)(q.v[sigma[3]]);
            if (c.x <= c.y + tol) maps.push_back(*tau);
        }
    }
    if (maps.empty()) throw InvalidParams("normalizing_maps: no canonical frame found");
    return maps;
}

std::string equivalence_signature(const Dissection& d, double tol) {
    auto maps = normalizing_maps(d.parent, tol);
    const double quantum = 1e-6;
    auto qz = [&](double v) { return static_cast<long long>(std::llround(v / quantum)); };

    std::string best;
    for (const auto& tau : maps) {
        AffineMap2 tau_inv = invert(tau);
        std::array<Point2, 4> canon{};
        for (int i = 0; i < 4; ++i) canon[i] = tau(d.parent.v[i]);
        // Canonical vertex list of the normal form, in normal-form order.
        std::array<Point2, 4> e{};
        e[0] = {0.0, 1.0};
        e[1] = {0.0, 0.0};
        e[2] = {1.0, 0.0};
        // The remaining vertex is whichever canonical image is not one of the
        // three pinned points.
        for (int i = 0; i < 4; ++i) {
            bool pinned = false;
            for (int j = 0; j < 3; ++j)
                if (distance(canon[i], e[j]) < 1e-6) pinned = true;
            if (!pinned) e[3] = canon[i];
        }

        std::vector<std::string> blobs;
        for (const auto& p : d.pieces) {
            AffineMap2 m = compose(tau, compose(p.map, tau_inv));
            char buf[200];
            std::string blob;
            for (int i = 0; i < 4; ++i) {
                Point2 u = m(e[i]);
                std::snprintf(buf, sizeof(buf), "%lld,%lld;", qz(u.x), qz(u.y));
                blob += buf;
            }
            blobs.push_back(blob);
        }
        std::sort(blobs.begin(), blobs.end());
        char head[100];
        std::snprintf(head, sizeof(head), "q[%lld,%lld]", qz(e[3].x), qz(e[3].y));
        std::string sig = head;
        for (const auto& b : blobs) sig += "|" + b;
        if (best.empty() || sig < best) best = sig;
    }
    return best;
}

}  // namespace selfaffine
