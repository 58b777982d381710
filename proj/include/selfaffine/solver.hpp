#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selfaffine/dissection.hpp"
#include "selfaffine/families.hpp"

namespace selfaffine {

/// The three dissection layouts that are swept: the interior-vertex layout
/// (C) and the two glass-cut layouts (A: two full cuts, B: full cut plus
/// sub-cut). A and B come in mirror/rotation variants so no attachment case
/// is missed.
enum class TemplateKind { C, A, B };

std::string to_string(TemplateKind t);
std::optional<TemplateKind> template_from_string(const std::string& s);

/// Number of geometric layout variants a template is swept with.
int template_variant_count(TemplateKind t);

/// Ordered triple of vertex correspondences for the three pieces.
struct PermutationTriple {
    VertexCorrespondence pi_a, pi_b, pi_c;

    static PermutationTriple from_index(int idx);  // 0..511
    int index() const;
    std::string to_string() const;  // "1432,1234,4321"
    static std::optional<PermutationTriple> from_string(const std::string& s);

    bool operator==(const PermutationTriple& o) const {
        return pi_a == o.pi_a && pi_b == o.pi_b && pi_c == o.pi_c;
    }
};

/// The six permutation triples whose systems have one-parameter solution
/// families, and the fifteen with single solutions, as established by the
/// exhaustive sweep.
const std::vector<PermutationTriple>& family_triples();
const std::vector<PermutationTriple>& singular_triples();

/// One dissection-feasibility system, reduced to the six unknowns
/// u = (x, y, p0, p1, p2, p3): each piece map is eliminated through its
/// first three vertex correspondences, the fourth contributing two residual
/// components.
struct ReducedSystem {
    TemplateKind tmpl = TemplateKind::C;
    int variant = 0;
    PermutationTriple triple;

    using Vec6 = std::array<double, 6>;

    /// Piece vertex lists at u (layout geometry, before correspondences).
    bool piece_vertices(const Vec6& u, std::array<std::array<Point2, 4>, 3>& out) const;

    /// The six residual components; false when the configuration is not
    /// evaluable (parent degenerates).
    bool residual(const Vec6& u, Vec6& out) const;

    double residual_norm(const Vec6& u) const;
};

ReducedSystem build_system(TemplateKind tmpl, int variant, const PermutationTriple& triple);

struct SolverConfig {
    std::uint64_t seed = 0;
    int starts = 2000;
    int newton_max_iters = 100;
    double residual_tol = 1e-10;
    double dedup_radius = 1e-7;
    double box_margin = 1e-6;
    double trapezoid_tol = 1e-7;
    // Shelving radius around the parallelogram point (1,1), where the
    // systems degenerate and Newton stagnates on near-solutions that are not
    // genuine roots (two pieces collapse to slivers there).
    double corner_shelf = 2e-3;
    double rank_tol = 1e-6;
    double curve_step = 1e-3;
    int curve_min_steps = 20;
    int curve_max_steps = 20000;
    double verify_tol = 1e-9;
    int jobs = 0;  // 0 = hardware concurrency
};

struct IsolatedSolution {
    ReducedSystem::Vec6 u{};
    double residual = 0.0;
    Point2 canonical{};  // normalized (x, y) in P
    std::vector<FamilyName> families;
    std::vector<int> singular_ids;
    bool special = false;
};

struct TracedCurve {
    ReducedSystem::Vec6 representative{};
    std::vector<ReducedSystem::Vec6> points;
    std::vector<Point2> canonical;  // normalized (x, y), one per traced point
    std::optional<FamilyName> family;
};

struct TrapezoidalSolution {
    ReducedSystem::Vec6 u{};
    double residual = 0.0;
    Point2 canonical{};
};

struct SolutionSet {
    std::vector<IsolatedSolution> isolated;
    std::vector<TracedCurve> curves;
    std::vector<TrapezoidalSolution> trapezoidal;

    bool has_nontrapezoidal() const { return !isolated.empty() || !curves.empty(); }
};

/// Multistart damped Newton over the search box, with dedup, trapezoid
/// shelving, verification-backed acceptance and tangent continuation for
/// curve classification. Deterministic for a fixed config.
SolutionSet solve_template(const ReducedSystem& sys, const SolverConfig& cfg);

struct TripleResult {
    TemplateKind tmpl = TemplateKind::C;
    int variant = 0;
    PermutationTriple triple;
    SolutionSet solutions;
};

struct Catalogue {
    TemplateKind tmpl = TemplateKind::C;
    SolverConfig cfg;
    std::vector<TripleResult> results;  // triples with any recorded content

    std::vector<std::string> curve_triples() const;
    std::vector<std::string> isolated_triples() const;
};

/// Sweeps all 512 permutation triples (times layout variants) of a template.
/// Parallel across triples; the merge order is deterministic.
Catalogue sweep_all(TemplateKind tmpl, const SolverConfig& cfg);

/// Materializes the three pieces of a solution into a verified dissection.
/// Throws VerificationFailure if the verifier rejects it.
Dissection dissection_from_solution(const ReducedSystem& sys, const ReducedSystem::Vec6& u,
                                    double tol = 1e-9);

/// Applies an affine change of frame to a whole dissection.
Dissection transform_dissection(const Dissection& d, const AffineMap2& tau);

/// The eight verified, pairwise affinely-distinct realizations of the
/// distinguished quadrangle, all expressed on its natural representative
/// (0,0),(1,0),(x0,y0),(0,1).
std::vector<Dissection> special_quadrangle_realizations(const SolverConfig& cfg = {});

/// Solves sys subject to pinning the canonical x-coordinate to `target_x`
/// (Gauss-Newton on the stacked system), seeded from `seed_u`.
std::optional<ReducedSystem::Vec6> solve_pinned_canonical_x(const ReducedSystem& sys,
                                                            const ReducedSystem::Vec6& seed_u,
                                                            double target_x);

}  // namespace selfaffine
