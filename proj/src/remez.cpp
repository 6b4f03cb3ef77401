#include "remezlab/remez.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace remezlab {

BoundForm parse_bound_form(std::string_view name) {
  if (name == "main-psh") return BoundForm::MainPsh;
  if (name == "simple-poly") return BoundForm::SimplePoly;
  if (name == "chebyshev-sharp") return BoundForm::ChebyshevSharp;
  if (name == "doubling") return BoundForm::Doubling;
  if (name == "l1-mean") return BoundForm::L1Mean;
  throw std::invalid_argument("unknown bound form: " + std::string(name));
}

std::string_view to_string(BoundForm form) {
  switch (form) {
    case BoundForm::MainPsh: return "main-psh";
    case BoundForm::SimplePoly: return "simple-poly";
    case BoundForm::ChebyshevSharp: return "chebyshev-sharp";
    case BoundForm::Doubling: return "doubling";
    case BoundForm::L1Mean: return "l1-mean";
  }
  return "?";
}

double bg_sharp_bound(int k, int n, double lambda) {
  if (k < 0 || n < 1) throw std::invalid_argument("bg_sharp_bound: need k >= 0, n >= 1");
  if (!(lambda > 0.0) || lambda > 1.0)
    throw std::invalid_argument("bg_sharp_bound: lambda must lie in (0, 1]");
  if (lambda == 1.0) return 1.0;
  const double beta = std::pow(1.0 - lambda, 1.0 / n);
  return cheb(k, (1.0 + beta) / (1.0 - beta));
}

double simple_bound(int k, int n, double ratio) {
  if (k < 0 || n < 1) throw std::invalid_argument("simple_bound: need k >= 0, n >= 1");
  if (!(ratio >= 1.0 - 1e-12)) throw std::invalid_argument("simple_bound: ratio must be >= 1");
  return std::pow(4.0 * n * ratio, k);
}

namespace {

void check_subset(const Ball& ball, const MeasurableSet& omega) {
  if (!(omega.measure() > 0.0)) throw std::invalid_argument("omega has zero measure");
  if (ball.dimension() != omega.dimension())
    throw std::invalid_argument("ball and omega dimensions differ");
  for (const Box& b : omega.boxes()) {
    const Vector far = (b.lo - ball.center).cwiseAbs().cwiseMax((b.hi - ball.center).cwiseAbs());
    if (far.norm() > ball.radius * (1.0 + 1e-12))
      throw std::invalid_argument("omega is not inside the ball");
  }
}

double set_ratio(const Ball& ball, const MeasurableSet& omega) {
  return std::max(1.0, ball.volume() / omega.measure());
}

}  // namespace

std::vector<BoundReport> verify_poly_remez(const MultiPoly& p, const Ball& ball,
                                           const MeasurableSet& omega,
                                           std::span<const BoundParams> forms,
                                           const Tolerances& tol) {
  check_subset(ball, omega);
  const int n = p.dimension();
  const int k = p.degree();
  const double ratio = set_ratio(ball, omega);
  const SupEstimate on_ball = sup_on_region(p, ball, tol.levels, tol.search);
  const SupEstimate on_omega = sup_on_region(p, omega, tol.levels, tol.search);

  std::vector<BoundReport> out;
  for (const BoundParams& params : forms) {
    BoundReport r;
    r.family = std::string(to_string(params.form));
    const double base = params.d_for(n) * ratio;
    switch (params.form) {
      case BoundForm::SimplePoly: r.bound = std::pow(base, params.c * k); break;
      case BoundForm::ChebyshevSharp: r.bound = bg_sharp_bound(k, n, 1.0 / ratio); break;
      default: throw std::invalid_argument("verify_poly_remez: unsupported form");
    }
    r.lhs = on_ball.value;
    r.rhs = r.bound * on_omega.value;
    r.margin = r.rhs - r.lhs;
    r.gap_lhs = on_ball.gap;
    r.gap_rhs = r.bound * on_omega.gap;
    r.pass = !(r.lhs > r.rhs * (1.0 + tol.tau_v) + r.gap_lhs + r.gap_rhs);
    if (params.form == BoundForm::SimplePoly)
      r.fitted =
          k > 0 ? std::max(0.0, std::log(r.lhs / on_omega.value) / (k * std::log(base))) : 0.0;
    else
      r.fitted = r.lhs / r.rhs;
    r.extra = {{"n", n},         {"k", k},
               {"ratio", ratio}, {"sup_omega", on_omega.value},
               {"c", params.c},  {"d", params.d_for(n)}};
    out.push_back(std::move(r));
  }
  return out;
}

BoundReport verify_poly_remez(const MultiPoly& p, const Ball& ball, const MeasurableSet& omega,
                              const BoundParams& params, const Tolerances& tol) {
  return verify_poly_remez(p, ball, omega, std::span<const BoundParams>(&params, 1), tol).front();
}

BoundReport verify_main_inequality(const PshSample& f, const Ball& ball,
                                   const MeasurableSet& omega, const BoundParams& params,
                                   double a, const Tolerances& tol) {
  check_subset(ball, omega);
  if (ball.center.norm() + a * ball.radius > 1.0 + 1e-12)
    throw std::invalid_argument("verify_main_inequality: need |x| + a t <= 1");
  const int n = ball.dimension();
  const double ratio = set_ratio(ball, omega);
  const double log_term = std::log(params.d_for(n) * ratio);

  BoundReport r;
  r.family = std::string(to_string(BoundForm::MainPsh));
  r.bound = params.c * log_term;
  r.extra = {{"n", n}, {"k", f.degree}, {"ratio", ratio}, {"c", params.c},
             {"d", params.d_for(n)}, {"r", f.r}};
  if (f.degree == 0) {
    r.rhs = r.bound;
    r.margin = r.rhs;
    return r;
  }
  const SupEstimate on_ball = sup_on_region(f.generator, ball, tol.levels, tol.search);
  const SupEstimate on_omega = sup_on_region(f.generator, omega, tol.levels, tol.search);
  const double sup_omega = f.from_modulus(on_omega.value);
  r.lhs = f.from_modulus(on_ball.value);
  r.rhs = r.bound + sup_omega;
  r.margin = r.rhs - r.lhs;
  r.gap_lhs = std::log1p(on_ball.gap / on_ball.value) / f.scale();
  r.gap_rhs = std::log1p(on_omega.gap / on_omega.value) / f.scale();
  const double slack = std::log1p(tol.tau_v) / f.scale();
  r.pass = !(r.lhs > r.rhs + slack + r.gap_lhs + r.gap_rhs);
  r.fitted = std::max(0.0, (r.lhs - sup_omega) / log_term);
  r.extra["sup_omega"] = sup_omega;
  return r;
}

BoundReport verify_doubling(const PshSample& f, const CVector& center, double t, double s,
                            double a, double c, const Tolerances& tol) {
  if (s < 1.0 || s > a) throw std::invalid_argument("verify_doubling: s must lie in [1, a]");
  if (center.norm() + a * t > 1.0 + 1e-12)
    throw std::invalid_argument("verify_doubling: need |x| + a t <= 1");
  BoundReport r;
  r.family = std::string(to_string(BoundForm::Doubling));
  r.bound = c * std::log(s);
  r.extra = {{"n", center.size()}, {"k", f.degree}, {"s", s}, {"t", t}, {"c", c}};
  if (f.degree == 0) {
    r.rhs = r.bound;
    r.margin = r.rhs;
    return r;
  }
  const SupEstimate big = sup_on_complex_ball(f.generator, center, s * t, tol.levels, tol.search);
  const SupEstimate small = sup_on_complex_ball(f.generator, center, t, tol.levels, tol.search);
  const double sup_small = f.from_modulus(small.value);
  r.lhs = f.from_modulus(big.value);
  r.rhs = r.bound + sup_small;
  r.margin = r.rhs - r.lhs;
  r.gap_lhs = std::log1p(big.gap / big.value) / f.scale();
  r.gap_rhs = std::log1p(small.gap / small.value) / f.scale();
  const double slack = std::log1p(tol.tau_v) / f.scale();
  r.pass = !(r.lhs > r.rhs + slack + r.gap_lhs + r.gap_rhs);
  r.fitted = s > 1.0 ? std::max(0.0, (r.lhs - sup_small) / std::log(s)) : 0.0;
  r.extra["sup_small"] = sup_small;
  return r;
}

double mean_abs_on(const MultiPoly& p, const MeasurableSet& omega, int cells) {
  const int d = omega.dimension();
  const double total = omega.measure();
  double integral = 0.0;
  for (const Box& box : omega.boxes()) {
    const Vector side = box.hi - box.lo;
    const double share = std::max(1.0, cells * box.volume() / total);
    const double density = std::pow(share / box.volume(), 1.0 / d);
    Eigen::VectorXi counts(d);
    for (int i = 0; i < d; ++i)
      counts[i] = std::max(1, static_cast<int>(std::lround(side[i] * density)));
    const Vector h = side.cwiseQuotient(counts.cast<double>());
    Eigen::VectorXi idx = Eigen::VectorXi::Zero(d);
    double sum = 0.0;
    for (;;) {
      const Vector x = box.lo + h.cwiseProduct((idx.cast<double>().array() + 0.5).matrix());
      sum += std::abs(p(x));
      int axis = 0;
      while (axis < d && ++idx[axis] == counts[axis]) idx[axis++] = 0;
      if (axis == d) break;
    }
    integral += sum * box.volume() / counts.prod();
  }
  return integral / total;
}

BoundReport verify_l1_remez(const MultiPoly& p, const Ball& ball, const MeasurableSet& omega,
                            const Tolerances& tol) {
  check_subset(ball, omega);
  const int n = p.dimension();
  const int k = p.degree();
  const double ratio = set_ratio(ball, omega);
  const SupEstimate on_ball = sup_on_region(p, ball, tol.levels, tol.search);
  const double mean = mean_abs_on(p, omega);

  BoundReport r;
  r.family = std::string(to_string(BoundForm::L1Mean));
  r.bound = (k + 1) * simple_bound(k, n, ratio);
  r.lhs = on_ball.value;
  r.rhs = r.bound * mean;
  r.margin = r.rhs - r.lhs;
  r.gap_lhs = on_ball.gap;
  r.pass = !(r.lhs > r.rhs * (1.0 + tol.tau_v) + r.gap_lhs);
  const double base = 4.0 * n * ratio;
  r.fitted = std::max(0.0, std::log(r.lhs / ((k + 1) * mean)) / std::log(base));
  r.extra = {{"n", n}, {"k", k}, {"ratio", ratio}, {"mean_omega", mean}};
  return r;
}

}  // namespace remezlab
