/// @file quadrature.hpp
/// @brief Adaptive 1-D quadrature for the half-line inequality checks.

#pragma once

#include <functional>

namespace axicyl {

/// Adaptive Simpson integration of f over [lo, hi] to absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double lo,
                          double hi, double tol = 1e-11, int max_depth = 40);

/// Pre-splits [lo, hi] into panels before adapting, so localized features
/// cannot hide between the first probe points.
double integrate_panels(const std::function<double(double)>& f, double lo,
                        double hi, double tol = 1e-11, int panels = 64);

}  // namespace axicyl
