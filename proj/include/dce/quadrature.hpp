#pragma once

#include <functional>

namespace dce {

// Adaptive 15-point Gauss-Kronrod on [a, b]. Throws NumericalError when the
// error estimate stays above abs_tol after max_depth bisections.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, unsigned max_depth = 30);

} // namespace dce
