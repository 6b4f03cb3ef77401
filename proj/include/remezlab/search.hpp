#pragma once

#include <functional>
#include <variant>

#include "remezlab/geometry.hpp"
#include "remezlab/poly.hpp"

namespace remezlab {

using Region = std::variant<Ball, MeasurableSet>;

int dimension(const Region& region);

/// Lower estimate of a supremum together with where it was attained.
struct SupEstimate {
  double value = 0.0;
  Vector argmax;
  int levels = 0;
  /// Heuristic: local Lipschitz slope of the last refinement stencil times
  /// the final step size.
  double gap = 0.0;
};

struct SearchOptions {
  int coarse_points = 4096;  // lattice budget for the whole region
  int starts = 8;            // best coarse nodes refined independently
  int moves_per_level = 8;   // pattern moves allowed at one step size
};

/// Multiscale maximization of `f` over `region`: a coarse lattice, then
/// `levels` rounds of stencil refinement (step halves each round) around
/// the best coarse nodes. Points leaving the region are projected back
/// (radially for balls, by clamping into the current box for box unions).
/// The returned value never decreases when `levels` grows.
SupEstimate maximize(const std::function<double(const Vector&)>& f, const Region& region,
                     int levels, const SearchOptions& options = {});

/// sup |p| over the region.
SupEstimate sup_on_region(const MultiPoly& p, const Region& region, int levels = 30,
                          const SearchOptions& options = {});

/// sup |p_c| over the complex ball B_c(center, radius) ⊂ C^n, searched on
/// the real 2n-dimensional ball (z = x + iy, coordinates ordered x then y).
SupEstimate sup_on_complex_ball(const MultiPoly& p, const CVector& center, double radius,
                                int levels = 30, const SearchOptions& options = {});

CVector to_complex(const Vector& xy);
Vector to_real(const CVector& z);

}  // namespace remezlab
