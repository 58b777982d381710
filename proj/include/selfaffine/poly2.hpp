#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace selfaffine {

/// Sparse bivariate polynomial with double coefficients. The family and
/// singular-solution polynomials are transcribed as integer coefficient
/// tables, so evaluation is exact at the coefficient level.
class Poly2 {
public:
    struct Term {
        int px = 0;
        int py = 0;
        double c = 0.0;
    };

    Poly2() = default;
    Poly2(std::initializer_list<Term> terms) : terms_(terms) { normalize(); }
    explicit Poly2(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

    double eval(double x, double y) const {
        double s = 0.0;
        for (const auto& t : terms_) s += t.c * ipow(x, t.px) * ipow(y, t.py);
        return s;
    }

    Poly2 dx() const {
        std::vector<Term> out;
        for (const auto& t : terms_)
            if (t.px > 0) out.push_back({t.px - 1, t.py, t.c * t.px});
        return Poly2(std::move(out));
    }

    Poly2 dy() const {
        std::vector<Term> out;
        for (const auto& t : terms_)
            if (t.py > 0) out.push_back({t.px, t.py - 1, t.c * t.py});
        return Poly2(std::move(out));
    }

    Poly2 operator+(const Poly2& o) const {
        std::vector<Term> out = terms_;
        out.insert(out.end(), o.terms_.begin(), o.terms_.end());
        return Poly2(std::move(out));
    }

    Poly2 operator-(const Poly2& o) const { return *this + (o * -1.0); }

    Poly2 operator*(double s) const {
        std::vector<Term> out = terms_;
        for (auto& t : out) t.c *= s;
        return Poly2(std::move(out));
    }

    Poly2 operator*(const Poly2& o) const {
        std::vector<Term> out;
        for (const auto& a : terms_)
            for (const auto& b : o.terms_) out.push_back({a.px + b.px, a.py + b.py, a.c * b.c});
        return Poly2(std::move(out));
    }

    bool is_zero(double tol = 0.0) const {
        for (const auto& t : terms_)
            if (std::fabs(t.c) > tol) return false;
        return true;
    }

    const std::vector<Term>& terms() const { return terms_; }

    /// Human-readable form like "x^3*y - x*y + y^2 - x - y + 1".
    std::string to_string() const;

private:
    static double ipow(double v, int e) {
        double r = 1.0;
        for (int i = 0; i < e; ++i) r *= v;
        return r;
    }

    void normalize();

    std::vector<Term> terms_;
};

}  // namespace selfaffine
