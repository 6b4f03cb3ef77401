#include "remezlab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace remezlab {

double QuadratureRule::sum_weights() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double QuadratureRule::apply(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
  return s;
}

QuadratureRule gauss_legendre(double a, double b, int panels) {
  if (panels < 1) throw std::invalid_argument("gauss_legendre: panels must be >= 1");
  using rule = boost::math::quadrature::gauss<double, 20>;
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  QuadratureRule out;
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < x.size(); ++i) {
      out.nodes.push_back(mid - half * x[i]);
      out.weights.push_back(half * w[i]);
      if (x[i] != 0.0) {
        out.nodes.push_back(mid + half * x[i]);
        out.weights.push_back(half * w[i]);
      }
    }
  }
  return out;
}

namespace {

struct Piece {
  double a, b, value, error, l1;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece kronrod(const std::function<double(double)>& f, double a, double b) {
  using rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  Piece p{a, b, 0.0, 0.0, 0.0};
  p.value = rule::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
  // Without recursion the reported error is left in [-1, 1] units.
  p.error *= 0.5 * (b - a);
  return p;
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tolerance, int max_pieces) {
  if (b <= a) return 0.0;
  std::priority_queue<Piece> queue;
  queue.push(kronrod(f, a, b));
  double value = queue.top().value, error = queue.top().error, l1 = queue.top().l1;
  while (error > tolerance * l1 && static_cast<int>(queue.size()) < max_pieces) {
    const Piece worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    const Piece left = kronrod(f, worst.a, mid), right = kronrod(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    queue.push(left);
    queue.push(right);
  }
  return value;
}

double circle_mean(const std::function<double(double)>& f_of_angle, int count) {
  double s = 0.0;
  for (int m = 0; m < count; ++m) s += f_of_angle(2.0 * std::numbers::pi * m / count);
  return s / count;
}

}  // namespace remezlab
