#include "selfaffine/roots.hpp"

#include <cmath>

namespace selfaffine {

std::vector<double> find_roots_scan_bisect(const std::function<double(double)>& f,
                                           double a, double b, int grid, double tol) {
    std::vector<double> roots;
    double h = (b - a) / grid;
    double x0 = a + h;
    double f0 = f(x0);
    for (int i = 2; i <= grid; ++i) {
        double x1 = a + i * h;
        // Skip the right endpoint itself; callers pass open intervals.
        if (i == grid) x1 = b - 0.25 * h;
        double f1 = f(x1);
        if (f0 == 0.0) {
            roots.push_back(x0);
        } else if (f0 * f1 < 0.0) {
            double lo = x0, hi = x1, flo = f0;
            for (int it = 0; it < 200 && hi - lo > tol; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = f(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (flo * fm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

}  // namespace selfaffine
