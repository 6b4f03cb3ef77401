#include "remezlab/bmo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "remezlab/geometry.hpp"
#include "remezlab/quadrature.hpp"

namespace remezlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-11;

bool one_dimensional(const BmoDomain& d) { return d.kind != BmoDomain::Kind::Sphere; }

struct Span {
  double lo;
  double hi;
};

Span span_of(const BmoDomain& d, const MetricBall& ball) {
  const double c = ball.center[0];
  if (d.kind == BmoDomain::Kind::Interval)
    return {std::max(d.a, c - ball.radius), std::min(d.b, c + ball.radius)};
  const double r = std::min(ball.radius, kPi);
  return {c - r, c + r};
}

std::vector<double> breakpoints(const BmoDomain& d, Span s, const Singularities& singular) {
  std::vector<double> pts{s.lo};
  for (double z : singular) {
    if (d.kind == BmoDomain::Kind::Circle) {
      for (double t = z + 2 * kPi * std::ceil((s.lo - z) / (2 * kPi)); t < s.hi; t += 2 * kPi)
        if (t > s.lo) pts.push_back(t);
    } else if (z > s.lo && z < s.hi) {
      pts.push_back(z);
    }
  }
  pts.push_back(s.hi);
  std::sort(pts.begin(), pts.end());
  return pts;
}

// Each piece is integrated after t = lo + (hi - lo)(3u^2 - 2u^3), whose
// Jacobian vanishes at both ends and tames endpoint log singularities.
double integrate_1d(const std::function<double(double)>& g, const std::vector<double>& pts) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i], len = pts[i + 1] - pts[i];
    if (!(len > 0.0)) continue;
    s += integrate_adaptive(
        [&](double u) { return g(lo + len * u * u * (3 - 2 * u)) * 6 * len * u * (1 - u); }, 0.0,
        1.0, kTol);
  }
  return s;
}

struct CapRule {
  std::vector<Point> points;
  std::vector<double> weights;
  double measure = 0.0;
};

CapRule cap_rule(const BmoDomain& d, const MetricBall& ball) {
  const Eigen::Vector3d c = Eigen::Vector3d(ball.center).normalized();
  Eigen::Vector3d e1 = std::abs(c[0]) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  e1 = (e1 - e1.dot(c) * c).normalized();
  const Eigen::Vector3d e2 = c.cross(e1);
  const double rho = std::min(ball.radius, kPi);
  const QuadratureRule radial = gauss_legendre(0.0, rho, d.radial_panels);
  CapRule rule;
  const int m = d.angular_points;
  for (std::size_t q = 0; q < radial.nodes.size(); ++q) {
    const double psi = radial.nodes[q];
    const double w = radial.weights[q] * std::sin(psi) * 2 * kPi / m;
    for (int a = 0; a < m; ++a) {
      const double phi = 2 * kPi * a / m;
      rule.points.push_back(Point(std::cos(psi) * c +
                                  std::sin(psi) * (std::cos(phi) * e1 + std::sin(phi) * e2)));
      rule.weights.push_back(w);
      rule.measure += w;
    }
  }
  return rule;
}

Point point1(double t) { return Point::Constant(1, t); }

}  // namespace

BmoDomain BmoDomain::interval(double a, double b) {
  if (!(b > a)) throw std::invalid_argument("BmoDomain: empty interval");
  BmoDomain d;
  d.kind = Kind::Interval;
  d.a = a;
  d.b = b;
  return d;
}

BmoDomain BmoDomain::circle() { return BmoDomain{}; }

BmoDomain BmoDomain::sphere() {
  BmoDomain d;
  d.kind = Kind::Sphere;
  return d;
}

double BmoDomain::measure() const {
  switch (kind) {
    case Kind::Interval: return b - a;
    case Kind::Circle: return 2 * kPi;
    case Kind::Sphere: return 4 * kPi;
  }
  return 0.0;
}

double ball_average(const DomainFunction& f, const BmoDomain& domain, const MetricBall& ball,
                    const Singularities& singular) {
  if (one_dimensional(domain)) {
    const Span s = span_of(domain, ball);
    if (!(s.hi > s.lo)) throw std::invalid_argument("ball_average: ball has zero measure");
    const auto pts = breakpoints(domain, s, singular);
    return integrate_1d([&](double t) { return f(point1(t)); }, pts) / (s.hi - s.lo);
  }
  if (!(ball.radius > 0.0)) throw std::invalid_argument("ball_average: ball has zero measure");
  const CapRule rule = cap_rule(domain, ball);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.points.size(); ++i) s += rule.weights[i] * f(rule.points[i]);
  return s / rule.measure;
}

double mean_oscillation(const DomainFunction& f, const BmoDomain& domain, const MetricBall& ball,
                        const Singularities& singular) {
  if (one_dimensional(domain)) {
    const Span s = span_of(domain, ball);
    if (!(s.hi > s.lo)) throw std::invalid_argument("mean_oscillation: ball has zero measure");
    const auto pts = breakpoints(domain, s, singular);
    const double len = s.hi - s.lo;
    const double avg = integrate_1d([&](double t) { return f(point1(t)); }, pts) / len;
    return integrate_1d([&](double t) { return std::abs(f(point1(t)) - avg); }, pts) / len;
  }
  if (!(ball.radius > 0.0)) throw std::invalid_argument("mean_oscillation: ball has zero measure");
  const CapRule rule = cap_rule(domain, ball);
  std::vector<double> v(rule.points.size());
  double avg = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = f(rule.points[i]);
    avg += rule.weights[i] * v[i];
  }
  avg /= rule.measure;
  double osc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) osc += rule.weights[i] * std::abs(v[i] - avg);
  return osc / rule.measure;
}

void to_json(nlohmann::json& j, const BmoReport& r) {
  j = {{"description", r.description},
       {"degree", r.degree},
       {"norm", r.norm},
       {"argmax", {{"center", std::vector<double>(r.argmax.center.data(),
                                                  r.argmax.center.data() + r.argmax.center.size())},
                   {"radius", r.argmax.radius}}}};
}

std::vector<MetricBall> ball_family(const BmoDomain& domain, const BallFamily& family) {
  std::vector<Point> centers;
  double rho0 = kPi;
  switch (domain.kind) {
    case BmoDomain::Kind::Interval:
      rho0 = 0.5 * (domain.b - domain.a);
      for (int i = 0; i < family.centers; ++i)
        centers.push_back(point1(domain.a + (domain.b - domain.a) * (i + 0.5) / family.centers));
      break;
    case BmoDomain::Kind::Circle:
      for (int i = 0; i < family.centers; ++i)
        centers.push_back(point1(2 * kPi * i / family.centers));
      break;
    case BmoDomain::Kind::Sphere:
      for (const Vector& v : sample_directions(3, family.centers)) centers.push_back(v);
      break;
  }
  std::vector<MetricBall> out;
  for (const Point& c : centers)
    for (int j = 0; j < family.levels; ++j) out.push_back({c, rho0 * std::ldexp(1.0, -j)});
  return out;
}

BmoReport bmo_norm(const DomainFunction& f, const BmoDomain& domain, const BallFamily& family,
                   const Singularities& singular) {
  const auto balls = ball_family(domain, family);
  if (balls.empty()) throw std::invalid_argument("bmo_norm: empty ball family");
  BmoReport r;
  r.norm = -1.0;
  for (const MetricBall& b : balls) {
    const double osc = mean_oscillation(f, domain, b, singular);
    r.oscillations.push_back(osc);
    if (osc > r.norm) {
      r.norm = osc;
      r.argmax = b;
    }
  }
  return r;
}

double sup_norm(const DomainFunction& f, const BmoDomain& domain) {
  if (!one_dimensional(domain)) {
    const CapRule rule = cap_rule(domain, {Point(Eigen::Vector3d::UnitZ()), kPi});
    double best = 0.0;
    for (const Point& x : rule.points) best = std::max(best, std::abs(f(x)));
    return best;
  }
  const double lo = domain.kind == BmoDomain::Kind::Interval ? domain.a : 0.0;
  const double hi = domain.kind == BmoDomain::Kind::Interval ? domain.b : 2 * kPi;
  const int n = 8192;
  auto g = [&](double t) { return std::abs(f(point1(std::clamp(t, lo, hi)))); };
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = g(lo + (hi - lo) * i / n);
  double best = *std::max_element(v.begin(), v.end());
  const double gr = (std::sqrt(5.0) - 1) / 2;
  for (int i = 1; i < n; ++i) {
    if (v[i] < v[i - 1] || v[i] < v[i + 1]) continue;
    double a = lo + (hi - lo) * (i - 1) / n, b = lo + (hi - lo) * (i + 1) / n;
    for (int it = 0; it < 80; ++it) {
      const double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
      if (g(x1) < g(x2))
        a = x1;
      else
        b = x2;
    }
    best = std::max(best, g(0.5 * (a + b)));
  }
  return best;
}

double log_integrability(const DomainFunction& f, const BmoDomain& domain,
                         const Singularities& singular, double norm) {
  if (!(norm > 0.0)) norm = sup_norm(f, domain);
  if (!(norm > 0.0)) throw std::invalid_argument("log_integrability: f vanishes identically");
  auto g = [&](const Point& x) { return std::abs(std::log(std::abs(f(x)) / norm)); };
  const MetricBall whole = one_dimensional(domain)
                               ? MetricBall{point1(domain.kind == BmoDomain::Kind::Interval
                                                       ? 0.5 * (domain.a + domain.b)
                                                       : kPi),
                                            domain.kind == BmoDomain::Kind::Interval
                                                ? 0.5 * (domain.b - domain.a)
                                                : kPi}
                               : MetricBall{Point(Eigen::Vector3d::UnitZ()), kPi};
  return ball_average(g, domain, whole, singular);
}

DomainFunction chebyshev_log_on_circle(int k) {
  // T_k(x) = cos(k arccos x) on [-1, 1].
  return [k](const Point& t) { return std::log(std::abs(std::cos(k * std::acos(std::cos(t[0]))))); };
}

Singularities chebyshev_circle_zeros(int k) {
  Singularities z;
  for (int j = 0; j < 2 * k; ++j) z.push_back((2 * j + 1) * kPi / (2 * k));
  return z;
}

}  // namespace remezlab
