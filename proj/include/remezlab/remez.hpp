#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "remezlab/geometry.hpp"
#include "remezlab/psh.hpp"
#include "remezlab/report.hpp"
#include "remezlab/search.hpp"

namespace remezlab {

enum class BoundForm { MainPsh, SimplePoly, ChebyshevSharp, Doubling, L1Mean };

BoundForm parse_bound_form(std::string_view name);
std::string_view to_string(BoundForm form);

struct BoundParams {
  BoundForm form = BoundForm::SimplePoly;
  double c = 1.0;
  double d = 0.0;  // 0 selects d = 4n

  double d_for(int n) const { return d > 0.0 ? d : 4.0 * n; }
};

struct Tolerances {
  double tau_v = 1e-2;
  int levels = 30;
  SearchOptions search = {};
};

/// T_k((1 + beta) / (1 - beta)) with beta = (1 - lambda)^(1/n).
double bg_sharp_bound(int k, int n, double lambda);

/// (4 n ratio)^k with ratio = |B| / |omega| >= 1.
double simple_bound(int k, int n, double ratio);

/// sup_B |p| against bound * sup_omega |p| for the SimplePoly form
/// ((d ratio)^(c k)) or the ChebyshevSharp form. A violation needs
/// lhs > rhs (1 + tau_v) + g_B + bound g_omega. `fitted` is the minimal c for
/// SimplePoly and lhs / rhs for ChebyshevSharp.
BoundReport verify_poly_remez(const MultiPoly& p, const Ball& ball, const MeasurableSet& omega,
                              const BoundParams& params, const Tolerances& tol = {});

/// Several forms sharing one pair of supremum estimates.
std::vector<BoundReport> verify_poly_remez(const MultiPoly& p, const Ball& ball,
                                           const MeasurableSet& omega,
                                           std::span<const BoundParams> forms,
                                           const Tolerances& tol = {});

/// sup_B f <= c log(d |B| / |omega|) + sup_omega f on the real slice, with
/// |x| + a t <= 1. Tolerances are transported to log scale:
/// log(1 + tau_v) / (k log r) plus both gaps in f units. `fitted` is the
/// minimal c.
BoundReport verify_main_inequality(const PshSample& f, const Ball& ball,
                                   const MeasurableSet& omega, const BoundParams& params,
                                   double a = 2.0, const Tolerances& tol = {});

/// sup_{B_c(x, s t)} f <= c log s + sup_{B_c(x, t)} f for s in [1, a] and
/// |x| + a t <= 1. `fitted` is the minimal c (0 at s = 1).
BoundReport verify_doubling(const PshSample& f, const CVector& center, double t, double s,
                            double a, double c, const Tolerances& tol = {});

/// Mean of |p| over omega by a midpoint rule with about `cells` cells.
double mean_abs_on(const MultiPoly& p, const MeasurableSet& omega, int cells = 4096);

/// sup_B |p| <= (k + 1) (4 n |B| / |omega|)^k mean_omega |p|. `fitted` is
/// the minimal exponent e with (k + 1) (4 n ratio)^e mean >= sup_B |p|.
BoundReport verify_l1_remez(const MultiPoly& p, const Ball& ball, const MeasurableSet& omega,
                            const Tolerances& tol = {});

}  // namespace remezlab
