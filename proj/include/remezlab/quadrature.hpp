#pragma once

#include <functional>
#include <vector>

namespace remezlab {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  double sum_weights() const;
  double apply(const std::function<double(double)>& f) const;
};

/// Composite 20-point Gauss-Legendre rule on [a, b] with `panels` equal panels.
QuadratureRule gauss_legendre(double a, double b, int panels = 1);

/// Globally adaptive 15-point Gauss-Kronrod integral of f over [a, b]: the
/// piece with the largest error estimate is bisected until the summed
/// estimate drops below tolerance * ∫|f| or `max_pieces` is reached.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tolerance = 1e-10, int max_pieces = 2000);

/// Mean of f over `count` equispaced angles on the circle (trapezoid rule).
double circle_mean(const std::function<double(double)>& f_of_angle, int count);

}  // namespace remezlab
