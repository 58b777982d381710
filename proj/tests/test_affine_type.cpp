#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "selfaffine/affine_type.hpp"
#include "selfaffine/rng.hpp"

using namespace selfaffine;

namespace {

Point2 random_valid_params(SplitMix64& rng) {
    for (;;) {
        double x = rng.uniform(0.05, 3.0);
        double y = rng.uniform(0.05, 3.0);
        if (x + y > 1.05) return {x, y};
    }
}

bool contains_pair(const std::array<NaturalParams, 8>& all, double x, double y) {
    return std::any_of(all.begin(), all.end(), [&](const NaturalParams& p) {
        return std::fabs(p.x - x) < 1e-9 && std::fabs(p.y - y) < 1e-9;
    });
}

}  // namespace

TEST_CASE("eight parametrizations of (2/3, 5/6)") {
    auto all = eight_parametrizations(2.0 / 3.0, 5.0 / 6.0);
    CHECK(contains_pair(all, 2.0 / 3.0, 5.0 / 6.0));
    CHECK(contains_pair(all, 1.2, 0.6));
    CHECK(contains_pair(all, 5.0 / 3.0, 4.0 / 3.0));
    CHECK(contains_pair(all, 0.75, 1.5));
    CHECK(contains_pair(all, 5.0 / 6.0, 2.0 / 3.0));
    CHECK(contains_pair(all, 0.6, 1.2));
    CHECK(contains_pair(all, 4.0 / 3.0, 5.0 / 3.0));
    CHECK(contains_pair(all, 1.5, 0.75));
    // Each of the eight regions is hit exactly once.
    for (int r = 0; r < 8; ++r) {
        int count = 0;
        for (const auto& p : all)
            if (p.region == static_cast<Region>(r)) ++count;
        CHECK(count == 1);
    }
}

TEST_CASE("the parallelogram point is fixed by all parametrizations") {
    auto all = eight_parametrizations(1.0, 1.0);
    for (const auto& p : all) {
        CHECK(p.x == doctest::Approx(1.0));
        CHECK(p.y == doctest::Approx(1.0));
    }
}

TEST_CASE("trapezoids have four distinct parametrizations, each twice") {
    auto all = eight_parametrizations(0.7, 1.0);
    std::vector<Point2> distinct;
    for (const auto& p : all) {
        bool found = false;
        for (const auto& d : distinct)
            if (std::fabs(d.x - p.x) < 1e-9 && std::fabs(d.y - p.y) < 1e-9) found = true;
        if (!found) distinct.push_back({p.x, p.y});
    }
    CHECK(distinct.size() == 4);
}

TEST_CASE("eight_parametrizations rejects invalid input") {
    CHECK_THROWS_AS(eight_parametrizations(0.2, 0.3), InvalidParams);
    CHECK_THROWS_AS(eight_parametrizations(-1.0, 2.5), InvalidParams);
}

TEST_CASE("normalize_to_P") {
    auto r1 = normalize_to_P(1.5, 0.75);
    CHECK(r1.params.x == doctest::Approx(2.0 / 3.0));
    CHECK(r1.params.y == doctest::Approx(5.0 / 6.0));
    CHECK(r1.input_region == Region::Pbar3prime);

    auto r2 = normalize_to_P(2.0 / 3.0, 5.0 / 6.0);
    CHECK(r2.applied == Substitution::Identity);
    CHECK(r2.params.x == doctest::Approx(2.0 / 3.0));

    auto r3 = normalize_to_P(0.75, 1.5);
    CHECK(r3.params.x == doctest::Approx(2.0 / 3.0));
    CHECK(r3.params.y == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("normalization oracle: the unique member in P") {
    // Exactly one of the eight parametrizations lies in P (up to equal
    // boundary values), and normalize_to_P finds it.
    SplitMix64 rng(11);
    for (int it = 0; it < 1000; ++it) {
        Point2 p = random_valid_params(rng);
        auto all = eight_parametrizations(p.x, p.y);
        int in_p = 0;
        std::vector<Point2> members;
        for (const auto& cand : all) {
            if (cand.x + cand.y > 1.0 - 1e-9 && cand.y <= 1.0 + 1e-9 &&
                cand.x <= cand.y + 1e-9) {
                bool dup = false;
                for (const auto& m : members)
                    if (std::fabs(m.x - cand.x) < 1e-9 && std::fabs(m.y - cand.y) < 1e-9)
                        dup = true;
                if (!dup) {
                    members.push_back({cand.x, cand.y});
                    ++in_p;
                }
            }
        }
        CHECK(in_p == 1);
        auto canon = normalize_to_P(p.x, p.y).params;
        CHECK(std::fabs(canon.x - members[0].x) < 1e-9);
        CHECK(std::fabs(canon.y - members[0].y) < 1e-9);
    }
}

TEST_CASE("the cycle substitution has order four") {
    SplitMix64 rng(12);
    for (int it = 0; it < 1000; ++it) {
        Point2 p = random_valid_params(rng);
        Point2 q = p;
        for (int k = 0; k < 4; ++k) q = apply_substitution(Substitution::Cycle, q.x, q.y);
        CHECK(std::fabs(q.x - p.x) < 1e-10);
        CHECK(std::fabs(q.y - p.y) < 1e-10);
    }
}

TEST_CASE("classify_shape") {
    CHECK(classify_shape(1.0, 1.0) == ShapeClass::Parallelogram);
    CHECK(classify_shape(0.7, 1.0) == ShapeClass::Trapezoid);
    CHECK(classify_shape(0.6, 0.6) == ShapeClass::AffineKite);
    CHECK(classify_shape(2.0 / 3.0, 5.0 / 6.0) == ShapeClass::Generic);
    // Shape class is a property of the affine type, not the parametrization.
    CHECK(classify_shape(1.5, 0.75) == ShapeClass::Generic);
    CHECK(classify_shape(1.0, 1.4) == ShapeClass::Trapezoid);
}

TEST_CASE("gc translation") {
    auto n = gc_to_natural({0.5, 0.75});
    CHECK(n.x == doctest::Approx(0.5));
    CHECK(n.y == doctest::Approx(0.75));

    SplitMix64 rng(13);
    for (int it = 0; it < 100; ++it) {
        double alpha = rng.uniform(0.01, 0.98);
        double beta = rng.uniform(alpha + 0.01, 0.99);
        if (beta <= alpha) continue;
        auto nat = gc_to_natural({alpha, beta});
        auto back = natural_to_gc(nat.x, nat.y);
        CHECK(back.alpha == doctest::Approx(alpha).epsilon(1e-9));
        CHECK(back.beta == doctest::Approx(beta).epsilon(1e-9));
    }

    CHECK_THROWS_AS(natural_to_gc(0.7, 1.0), NotApplicable);
    CHECK_THROWS_AS(gc_to_natural({0.8, 0.4}), InvalidParams);
}

TEST_CASE("gc duality describes the same affine type") {
    SplitMix64 rng(14);
    for (int it = 0; it < 200; ++it) {
        double alpha = rng.uniform(0.02, 0.9);
        double beta = rng.uniform(alpha + 0.02, 0.98);
        if (beta <= alpha + 0.01) continue;
        GcParams g{alpha, beta};
        GcParams d = gc_dual(g);
        auto n1 = gc_to_natural(g);
        auto n2 = gc_to_natural(d);
        auto c1 = normalize_to_P(n1.x, n1.y).params;
        auto c2 = normalize_to_P(n2.x, n2.y).params;
        CHECK(std::fabs(c1.x - c2.x) < 1e-9);
        CHECK(std::fabs(c1.y - c2.y) < 1e-9);
    }
}

TEST_CASE("gc sign property: beta > 1/(2-alpha) iff x < y") {
    SplitMix64 rng(15);
    int checked = 0;
    while (checked < 1000) {
        double alpha = rng.uniform(0.01, 0.97);
        double beta = rng.uniform(alpha + 0.01, 0.99);
        if (beta <= alpha) continue;
        double threshold = 1.0 / (2.0 - alpha);
        if (std::fabs(beta - threshold) < 1e-6) continue;  // skip the boundary
        auto n = gc_to_natural({alpha, beta});
        CHECK((beta > threshold) == (n.x < n.y));
        ++checked;
    }
}
