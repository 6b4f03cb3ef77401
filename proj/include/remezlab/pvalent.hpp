#pragma once

#include <vector>

#include <json.hpp>

#include "remezlab/poly.hpp"
#include "remezlab/report.hpp"

namespace remezlab {

/// sum_{k >= 1} k^l beta^k. With terms == 0 the sum stops once the
/// geometric tail bound falls below 1e-14 of the partial sum.
double phi_series(int l, double beta, int terms = 0);

/// p_0 = beta and p_{l+1} = beta (1 - beta) p_l' + (l + 1) beta p_l, so that
/// phi_l(beta) = p_l(beta) / (1 - beta)^(l + 1).
struct ValencyTable {
  int l_max = 0;
  std::vector<std::vector<double>> p;  // ascending coefficients, index l
  std::vector<double> mu;              // max over [0, 1] of |p_l|

  double eval(int l, double beta) const;
};

void to_json(nlohmann::json& j, const ValencyTable& t);

/// Builds p_0..p_{l_max} and checks each against phi_series on
/// beta = 0.1..0.9 to 1e-10 relative; throws std::logic_error on mismatch.
ValencyTable build_valency_table(int l_max);

/// max over [0, 1] of |q| for ascending coefficients q: dense sampling, then
/// bisection on q' around sampled peaks.
double max_on_unit_interval(const std::vector<double>& q);

struct PhiBoundReport {
  int p = 0;
  std::vector<double> betas;
  std::vector<double> lhs;  // phi_{2p}(beta)
  std::vector<double> rhs;  // (4p)^{2p} / (1 - beta)^{2p + 1}
  double worst_ratio = 0.0;
  bool pass = false;
};

void to_json(nlohmann::json& j, const PhiBoundReport& r);

/// phi_{2p}(beta) < (4p)^{2p} / (1 - beta)^{2p + 1} at every beta.
PhiBoundReport check_phi_bound(int p, const std::vector<double>& betas);

/// 0.05, 0.10, ..., 0.95.
std::vector<double> default_beta_grid();

/// 2 max{1 / (alpha (1 - alpha)), (4A)^2 / (alpha beta (1 - beta)^3)}.
double valency_constant(double alpha, double beta, double A);

struct DoublingConfig {
  double R = 1.0;
  double R_inner = 0.5;  // R' < R
  double alpha = 0.5;

  double beta() const { return R_inner / R; }
};

/// max_{|z| = R'} |f| <= C(alpha, beta, A)^p max_{|z| = alpha R'} |f| for a
/// degree-p polynomial. `fitted` is the smallest A for which the formula
/// covers this trial; extra.base is (lhs / rhs)^(1/p).
BoundReport verify_valent_doubling(const MultiPoly& f, const DoublingConfig& cfg, double A = 1.0,
                                   double tau = 1e-2);

}  // namespace remezlab
