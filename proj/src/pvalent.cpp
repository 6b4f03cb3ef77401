#include "remezlab/pvalent.hpp"

#include <cmath>
#include <stdexcept>

#include "remezlab/potential.hpp"

namespace remezlab {

double phi_series(int l, double beta, int terms) {
  if (l < 0) throw std::invalid_argument("phi_series: l must be >= 0");
  if (!(beta > 0.0) || !(beta < 1.0)) throw std::invalid_argument("phi_series: beta must lie in (0, 1)");
  double sum = 0.0;
  const int cap = terms > 0 ? terms : 100000000;
  for (int k = 1; k <= cap; ++k) {
    const double term = std::pow(double(k), l) * std::pow(beta, k);
    sum += term;
    if (terms > 0) continue;
    const double ratio = beta * std::pow(1.0 + 1.0 / k, l);
    if (ratio < 1.0 && term * ratio / (1.0 - ratio) < 1e-14 * sum) break;
  }
  return sum;
}

namespace {

double horner(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
  return s;
}

std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(i * c[i]);
  return d;
}

}  // namespace

double ValencyTable::eval(int l, double beta) const { return horner(p.at(l), beta); }

void to_json(nlohmann::json& j, const ValencyTable& t) {
  j = {{"l_max", t.l_max}, {"p", t.p}, {"mu", t.mu}};
}

double max_on_unit_interval(const std::vector<double>& q) {
  const int n = 4096;
  const std::vector<double> dq = derivative(q);
  double best = std::max(std::abs(horner(q, 0.0)), std::abs(horner(q, 1.0)));
  double prev = horner(dq, 0.0);
  for (int i = 1; i <= n; ++i) {
    const double x = double(i) / n;
    const double cur = horner(dq, x);
    if ((prev > 0.0) != (cur > 0.0)) {
      double a = double(i - 1) / n, b = x;
      const bool rising = prev > 0.0;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (a + b);
        ((horner(dq, mid) > 0.0) == rising ? a : b) = mid;
      }
      best = std::max(best, std::abs(horner(q, 0.5 * (a + b))));
    }
    best = std::max(best, std::abs(horner(q, x)));
    prev = cur;
  }
  return best;
}

ValencyTable build_valency_table(int l_max) {
  if (l_max < 1) throw std::invalid_argument("build_valency_table: l_max must be >= 1");
  ValencyTable t;
  t.l_max = l_max;
  t.p.push_back({0.0, 1.0});
  for (int l = 0; l < l_max; ++l) {
    const std::vector<double>& cur = t.p.back();
    const std::vector<double> d = derivative(cur);
    std::vector<double> next(cur.size() + 1, 0.0);
    // beta (1 - beta) p' = sum d_i (beta^{i+1} - beta^{i+2})
    for (std::size_t i = 0; i < d.size(); ++i) {
      next[i + 1] += d[i];
      next[i + 2] -= d[i];
    }
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += (l + 1) * cur[i];
    while (next.size() > 1 && next.back() == 0.0) next.pop_back();
    t.p.push_back(next);
  }
  for (int l = 0; l <= l_max; ++l) {
    for (int b = 1; b <= 9; ++b) {
      const double beta = b / 10.0;
      const double via_p = t.eval(l, beta) / std::pow(1.0 - beta, l + 1);
      const double series = phi_series(l, beta);
      if (std::abs(via_p - series) > 1e-10 * std::abs(series))
        throw std::logic_error("build_valency_table: p_" + std::to_string(l) +
                               " disagrees with the phi series");
    }
    t.mu.push_back(max_on_unit_interval(t.p[l]));
  }
  return t;
}

void to_json(nlohmann::json& j, const PhiBoundReport& r) {
  j = {{"p", r.p},         {"betas", r.betas},
       {"lhs", r.lhs},     {"rhs", r.rhs},
       {"worst_ratio", r.worst_ratio}, {"pass", r.pass}};
}

PhiBoundReport check_phi_bound(int p, const std::vector<double>& betas) {
  if (p < 1) throw std::invalid_argument("check_phi_bound: p must be >= 1");
  PhiBoundReport r;
  r.p = p;
  r.betas = betas;
  r.pass = true;
  for (double beta : betas) {
    const double lhs = phi_series(2 * p, beta);
    const double rhs = std::pow(4.0 * p, 2 * p) / std::pow(1.0 - beta, 2 * p + 1);
    r.lhs.push_back(lhs);
    r.rhs.push_back(rhs);
    r.worst_ratio = std::max(r.worst_ratio, lhs / rhs);
    if (!(lhs < rhs)) r.pass = false;
  }
  return r;
}

std::vector<double> default_beta_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 19; ++i) g.push_back(0.05 * i);
  return g;
}

double valency_constant(double alpha, double beta, double A) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0) || !(A > 0.0))
    throw std::invalid_argument("valency_constant: parameter out of range");
  return 2.0 * std::max(1.0 / (alpha * (1.0 - alpha)),
                        16.0 * A * A / (alpha * beta * std::pow(1.0 - beta, 3)));
}

BoundReport verify_valent_doubling(const MultiPoly& f, const DoublingConfig& cfg, double A,
                                   double tau) {
  if (f.dimension() != 1) throw std::invalid_argument("verify_valent_doubling: univariate only");
  if (!(cfg.R_inner > 0.0 && cfg.R_inner < cfg.R))
    throw std::invalid_argument("verify_valent_doubling: need 0 < R' < R");
  const int p = f.degree();
  const std::vector<double> c = f.coefficients();
  auto scaled = [&](double rho) {
    std::vector<Complex> s(c.size());
    double pw = 1.0;
    for (std::size_t i = 0; i < c.size(); ++i, pw *= rho) s[i] = c[i] * pw;
    return s;
  };
  const double C = valency_constant(cfg.alpha, cfg.beta(), A);

  BoundReport r;
  r.family = "valent-doubling";
  r.lhs = circle_max(scaled(cfg.R_inner));
  const double small = circle_max(scaled(cfg.alpha * cfg.R_inner));
  r.bound = std::pow(C, p);
  r.rhs = r.bound * small;
  r.margin = r.rhs - r.lhs;
  r.pass = !(r.lhs > r.rhs * (1.0 + tau));
  const double base = p > 0 ? std::pow(r.lhs / small, 1.0 / p) : 1.0;
  const double first = 2.0 / (cfg.alpha * (1.0 - cfg.alpha));
  const double beta = cfg.beta();
  r.fitted = base <= first
                 ? 0.0
                 : std::sqrt(base / 2.0 * cfg.alpha * beta * std::pow(1.0 - beta, 3)) / 4.0;
  r.extra = {{"p", p}, {"alpha", cfg.alpha}, {"beta", beta}, {"A", A}, {"C", C}, {"base", base}};
  return r;
}

}  // namespace remezlab
