#pragma once

#include <string>

#include "selfaffine/solver.hpp"

namespace selfaffine {

/// Catalogue wire format. Deterministic bytes for identical sweeps; numbers
/// carry 17 significant digits. Trapezoidal lists are capped per triple in
/// the serialized form (the full count is recorded).
std::string catalogue_to_json(const Catalogue& cat);
Catalogue catalogue_from_json(const std::string& json);

struct ReportCheck {
    std::string name;
    bool passed = false;
    std::string details;
};

struct ReproductionReport {
    std::vector<ReportCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Reproduction summary: singular-table refinement, permutation census,
/// family recovery and construction verification, measured against a
/// template-C catalogue (plus optional glass-cut catalogues).
ReproductionReport report_reproduction(const Catalogue& catalogue_c,
                                       const Catalogue* catalogue_a = nullptr,
                                       const Catalogue* catalogue_b = nullptr,
                                       double newton_target = 1e-12);

std::string report_to_json(const ReproductionReport& r);

}  // namespace selfaffine
