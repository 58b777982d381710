#include "selfaffine/poly2.hpp"

#include <algorithm>
#include <cstdio>

namespace selfaffine {

void Poly2::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
        int da = a.px + a.py, db = b.px + b.py;
        if (da != db) return da > db;
        if (a.px != b.px) return a.px > b.px;
        return a.py > b.py;
    });
    std::vector<Term> merged;
    for (const auto& t : terms_) {
        if (!merged.empty() && merged.back().px == t.px && merged.back().py == t.py)
            merged.back().c += t.c;
        else
            merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return t.c == 0.0; }),
                 merged.end());
    terms_ = std::move(merged);
}

std::string Poly2::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        double c = t.c;
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += (c < 0) ? " - " : " + ";
        }
        first = false;
        double a = std::fabs(c);
        std::string mono;
        if (t.px > 0) mono += (t.px == 1) ? "x" : "x^" + std::to_string(t.px);
        if (t.py > 0) {
            if (!mono.empty()) mono += "*";
            mono += (t.py == 1) ? "y" : "y^" + std::to_string(t.py);
        }
        if (mono.empty()) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%g", a);
            out += buf;
        } else {
            if (a != 1.0) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%g*", a);
                out += buf;
            }
            out += mono;
        }
    }
    return out;
}

}  // namespace selfaffine
