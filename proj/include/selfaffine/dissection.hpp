#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selfaffine/geometry.hpp"

namespace selfaffine {

/// Dihedral vertex correspondence: perm[i] is the 0-based index of the piece
/// vertex that the i-th source vertex maps onto. Only the eight orderings
/// compatible with the cyclic structure of a quadrangle are allowed.
class VertexCorrespondence {
public:
    VertexCorrespondence() : images_{0, 1, 2, 3} {}

    /// Parses "3214"-style 1-based image strings. Throws InvalidParams for
    /// anything outside the dihedral set.
    static VertexCorrespondence from_string(const std::string& s);
    static VertexCorrespondence from_images(const std::array<int, 4>& images);

    /// All eight admissible correspondences, in a fixed enumeration order:
    /// the four rotations 1234, 2341, 3412, 4123 then the four reflections
    /// 1432, 2143, 3214, 4321.
    static const std::array<VertexCorrespondence, 8>& all();

    int operator()(int i) const { return images_[i]; }
    const std::array<int, 4>& images() const { return images_; }

    std::string to_string() const;

    bool operator==(const VertexCorrespondence& o) const { return images_ == o.images_; }

private:
    std::array<int, 4> images_;
};

enum class CombinatorialType { A, B, C, Other };

std::string to_string(CombinatorialType t);
std::optional<CombinatorialType> ctype_from_string(const std::string& s);

struct DissectionPiece {
    Quadrangle quad;
    AffineMap2 map;  // sends the source quadrangle onto this piece
    VertexCorrespondence corr;
};

/// A dissection of `parent` into affine images of `source`. For genuine
/// self-affinities source == parent; the chain construction of the
/// non-convex theory dissects one quadrangle into copies of a smaller one,
/// which is why the two are kept separate.
struct Dissection {
    Quadrangle parent;
    std::vector<DissectionPiece> pieces;
    CombinatorialType ctype = CombinatorialType::Other;
    std::optional<Quadrangle> source_override;  // set iff source != parent

    const Quadrangle& source() const { return source_override ? *source_override : parent; }
    bool is_self_affine() const { return !source_override.has_value(); }
};

struct VerificationReport {
    bool passed = false;
    double area_defect = 0.0;          // relative to parent area
    double max_affine_residual = 0.0;  // worst vertex mismatch, absolute
    std::vector<std::string> disjointness_violations;
    std::vector<std::string> coverage_violations;
};

/// Checks that the pieces really are affine images of the source matched per
/// their correspondences, that areas add up, that piece interiors are
/// disjoint and that every piece stays inside the parent. Failures are
/// report entries, never exceptions.
VerificationReport verify(const Dissection& d, double tol = kDefaultTol);

/// Incidence-based detection of the three 3-piece patterns. Requires a
/// verified 3-piece dissection; throws NotThreePieces otherwise.
CombinatorialType combinatorial_type(const Dissection& d, double tol = kDefaultTol);

/// Replaces piece `piece_index` of `d` by the dissection `sub` (which must be
/// a verified self-affinity of a quadrangle affinely congruent to d's
/// source). Throws TypeMismatch when no vertex correspondence matches.
Dissection refine(const Dissection& d, std::size_t piece_index, const Dissection& sub,
                  double tol = kDefaultTol);

/// Canonical byte string invariant under affine images of the whole
/// dissection and relabeling of pieces. Built from the piece maps expressed
/// in the normal-form frame of the parent, quantized at 1e-6.
std::string equivalence_signature(const Dissection& d, double tol = kDefaultTol);

/// All affine maps sending `q` onto the normal-form representative of its
/// affine type (vertices (0,1),(0,0),(1,0),(x,y) with canonical (x,y)).
/// Symmetric shapes yield several.
std::vector<AffineMap2> normalizing_maps(const Quadrangle& q, double tol = kDefaultTol);

}  // namespace selfaffine
