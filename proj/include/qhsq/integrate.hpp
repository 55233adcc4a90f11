// integrate.hpp
// Adaptive 1-D integration to a fixed absolute tolerance.

#pragma once

#include <functional>

namespace qhsq {

/// Adaptive Gauss-Kronrod integration of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

/// Iterated 2-D integration of f over [a,b] x [a2,b2].
double integrate2d(const std::function<double(double, double)>& f, double a, double b,
                   double a2, double b2, double abs_tol = 1e-10);

} // namespace qhsq
