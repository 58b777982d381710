#pragma once

#include <functional>
#include <vector>

namespace selfaffine {

/// All roots of f in the open interval (a, b), located by a sign scan over a
/// uniform grid followed by bisection. Grid points where f vanishes exactly
/// are kept as roots. Tolerance is absolute on the abscissa.
std::vector<double> find_roots_scan_bisect(const std::function<double(double)>& f,
                                           double a, double b, int grid = 10000,
                                           double tol = 1e-14);

}  // namespace selfaffine
