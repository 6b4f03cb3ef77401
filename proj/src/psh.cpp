#include "remezlab/psh.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "remezlab/quadrature.hpp"

namespace remezlab {

namespace {

constexpr double kPi = std::numbers::pi;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

// Surface area of the unit sphere S^{d-1}.
double sphere_area(int d) { return d * unit_ball_volume(d); }

}  // namespace

double floored_log(double modulus) {
  if (!(modulus > 0.0)) return kLogFloor;
  return std::max(std::log(modulus), kLogFloor);
}

double PshSample::scale() const { return degree > 0 ? degree * std::log(r) : 0.0; }

double PshSample::from_modulus(double modulus) const {
  if (degree == 0) return 0.0;
  const double l = floored_log(modulus);
  if (is_floored(l)) return kLogFloor;
  return (l - normalizer) / scale();
}

double PshSample::operator()(const CVector& z) const {
  return from_modulus(std::abs(generator(z)));
}

double PshSample::at(const Vector& x) const { return from_modulus(std::abs(generator(x))); }

PlanarFunction PshSample::planar() const {
  if (generator.dimension() != 1) throw std::invalid_argument("PshSample::planar: n != 1");
  return [self = *this](Complex z) {
    CVector v(1);
    v[0] = z;
    return self(v);
  };
}

PshSample make_fr_sample(const MultiPoly& p, double r, int levels, const SearchOptions& options,
                         double tau) {
  if (p.is_zero()) throw std::invalid_argument("make_fr_sample: zero polynomial");
  if (!(r > 1.0)) throw std::invalid_argument("make_fr_sample: r must exceed 1");
  PshSample s{p, p.degree(), r};
  s.tau = tau;
  const CVector origin = CVector::Zero(p.dimension());
  if (s.degree == 0) {
    s.normalizer = std::log(std::abs(p.terms().front().coeff));
    return s;
  }
  const SupEstimate outer = sup_on_complex_ball(p, origin, r, levels, options);
  s.normalizer = std::log(outer.value);
  s.normalizer_gap = std::log1p(outer.gap / outer.value);
  const SupEstimate inner = sup_on_complex_ball(p, origin, 1.0, levels, options);
  s.unit_sup = s.from_modulus(inner.value);
  s.unit_sup_gap = std::log1p(inner.gap / inner.value) / s.scale();
  s.class_ok = s.unit_sup >= -1.0 - tau;
  return s;
}

MollifierKernel MollifierKernel::bump(int dimension) {
  if (dimension < 1) throw std::invalid_argument("MollifierKernel: dimension must be >= 1");
  MollifierKernel k{dimension, 1.0};
  const double mass = sphere_area(dimension) *
                      integrate_adaptive(
                          [&](double s) { return k.profile(s) * std::pow(s, dimension - 1); },
                          0.0, 1.0, 1e-12);
  k.normalization = 1.0 / mass;
  return k;
}

double MollifierKernel::profile(double s) const {
  if (!(s < 1.0)) return 0.0;
  return normalization * std::exp(-1.0 / (1.0 - s * s));
}

double MollifierKernel::radial_moment(int power) const {
  return sphere_area(dimension) *
         integrate_adaptive(
             [&](double s) { return profile(s) * std::pow(s, dimension - 1 + power); }, 0.0, 1.0,
             1e-12);
}

namespace {

// Trapezoid mean of f over the circle |z - w| = rho, doubling the angle
// count until two successive means agree.
double adaptive_circle_mean(const PlanarFunction& f, Complex w, double rho,
                            const MollifyOptions& o) {
  int m = o.base_angles;
  auto at = [&](double t) { return f(w + std::polar(rho, t)); };
  double mean = circle_mean(at, m);
  while (m < o.max_angles) {
    const double odd =
        circle_mean([&](double t) { return at(t + kPi / m); }, m);  // shifted half a step
    const double next = 0.5 * (mean + odd);
    m *= 2;
    const bool done = std::abs(next - mean) < o.angular_tolerance * std::max(1.0, std::abs(next));
    mean = next;
    if (done) break;
  }
  return mean;
}

}  // namespace

GridFunction mollify(const PlanarFunction& f, const GridSpec& nodes, double domain_radius,
                     double eps, const MollifierKernel& kernel, const MollifyOptions& options) {
  if (kernel.dimension != 2) throw std::invalid_argument("mollify: planar kernel required");
  if (!(eps > 0.0)) throw std::invalid_argument("mollify: eps must be positive");
  if (!(eps < domain_radius)) throw std::invalid_argument("mollify: eps exceeds the domain");
  const QuadratureRule radial = gauss_legendre(0.0, 1.0, options.radial_panels);
  std::vector<double> weights(radial.nodes.size());
  double total = 0.0;
  for (std::size_t q = 0; q < weights.size(); ++q) {
    const double s = radial.nodes[q];
    weights[q] = 2.0 * kPi * s * kernel.profile(s) * radial.weights[q];
    total += weights[q];
  }
  for (double& w : weights) w /= total;

  GridFunction out(nodes, kNaN);
  for (int j = 0; j < nodes.ny; ++j)
    for (int i = 0; i < nodes.nx; ++i) {
      const Complex w = nodes.node(i, j);
      if (!(std::abs(w) < domain_radius - eps)) continue;
      double acc = 0.0;
      for (std::size_t q = 0; q < weights.size(); ++q)
        acc += weights[q] * adaptive_circle_mean(f, w, eps * radial.nodes[q], options);
      out(i, j) = acc;
    }
  return out;
}

GridFunction mollify(const GridFunction& f, double eps, const MollifierKernel& kernel,
                     const MollifyOptions& options) {
  if (!(f.spec.h() <= eps / 4.0))
    throw std::invalid_argument("mollify: grid spacing exceeds eps/4 (undersampled kernel)");
  // Interpolated data is only continuous; resolving circles below a quarter
  // grid step buys nothing.
  MollifyOptions o = options;
  const double wanted = 8.0 * kPi * eps / f.spec.h();
  while (o.max_angles / 2 >= std::max<double>(wanted, o.base_angles)) o.max_angles /= 2;
  return mollify(f.as_function(), f.spec, std::numeric_limits<double>::infinity(), eps, kernel, o);
}

ExtensionParams ExtensionParams::make(double r, double r_f, double level) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("ExtensionParams: r must lie in (0,1)");
  const double lo = (1.0 + 3.0 * r) / 4.0;
  const double hi = (1.0 + r) / 2.0;
  if (r_f < lo - 1e-12 || r_f > hi + 1e-12)
    throw std::invalid_argument("ExtensionParams: r_f outside [(1+3r)/4, (1+r)/2]");
  if (!(level < 0.0)) throw std::invalid_argument("ExtensionParams: level must be negative");
  return {r, r_f, level};
}

double ExtensionParams::c_f() const { return std::log(4.0 * r_f / (3.0 + r)) / (2.0 * level); }

namespace {

double circle_min(const PlanarFunction& f, double rho, int angles) {
  double lo = std::numeric_limits<double>::infinity();
  for (int m = 0; m < angles; ++m) lo = std::min(lo, f(std::polar(rho, 2.0 * kPi * m / angles)));
  return lo;
}

}  // namespace

ExtensionParams choose_extension_params(const PlanarFunction& f, double r, int circles,
                                        int angles) {
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("choose_extension_params: r must lie in (0,1)");
  const double lo = (1.0 + 3.0 * r) / 4.0;
  const double hi = (1.0 + r) / 2.0;
  double best_rho = lo;
  double best = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < circles; ++c) {
    const double rho = circles > 1 ? lo + (hi - lo) * c / (circles - 1) : lo;
    const double v = circle_min(f, rho, angles);
    if (v > best) {
      best = v;
      best_rho = rho;
    }
  }
  best = std::min(best, circle_min(f, best_rho, 2048));
  if (!(best < 0.0))
    throw std::runtime_error("choose_extension_params: f is nonnegative on every circle");
  return ExtensionParams::make(r, best_rho, best);
}

SubharmonicExtension::SubharmonicExtension(PlanarFunction f, ExtensionParams params,
                                           int check_angles)
    : f_(std::move(f)), params_(params) {
  if (circle_min(f_, params_.r_f, check_angles) < params_.level - 1e-12)
    throw std::invalid_argument("SubharmonicExtension: f drops below C(r) on |z| = r_f");
}

double SubharmonicExtension::log_term(Complex z) const {
  return std::log(4.0 * std::abs(z) / (3.0 + params_.r)) / params_.c_f();
}

double SubharmonicExtension::operator()(Complex z) const {
  const double rho = std::abs(z);
  if (rho < params_.r_f) return f_(z);
  if (rho < 1.0) return std::max(f_(z), log_term(z));
  return log_term(z);
}

GridFunction extend_subharmonic(const PlanarFunction& f, const ExtensionParams& params,
                                const GridSpec& out, double radius) {
  const SubharmonicExtension h(f, params);
  return GridFunction::sample(out, [&](Complex z) { return h(z); }, radius);
}

double growth_constant(const GridFunction& h, double c_f) {
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < h.spec.ny; ++j)
    for (int i = 0; i < h.spec.nx; ++i) {
      const double v = h(i, j);
      if (!std::isfinite(v) || is_floored(v)) continue;
      best = std::max(best, v / c_f - std::log1p(std::abs(h.spec.node(i, j))));
    }
  return best;
}

namespace {

SubmeanReport submean_scan(const PlanarFunction& g, const GridSpec& nodes, double domain_radius,
                           double rho, double tol, int angles) {
  SubmeanReport report;
  for (int j = 0; j < nodes.ny; ++j)
    for (int i = 0; i < nodes.nx; ++i) {
      const Complex z = nodes.node(i, j);
      if (std::abs(z) + rho > domain_radius) continue;
      const double v = g(z);
      if (!std::isfinite(v) || is_floored(v)) {
        ++report.skipped;
        continue;
      }
      auto mean_at = [&](int m) {
        return circle_mean([&](double t) { return g(z + std::polar(rho, t)); }, m);
      };
      double mean = mean_at(angles);
      if (std::isnan(mean)) continue;
      ++report.tested;
      for (int m = 4 * angles; v - mean > tol && m <= 1024 * angles; m *= 4) mean = mean_at(m);
      if (v - mean > tol) report.violations.push_back({i, j, v, mean});
    }
  return report;
}

}  // namespace

SubmeanReport submeanvalue_test(const PlanarFunction& g, const GridSpec& nodes,
                                double domain_radius, double rho, double tol, int angles) {
  if (!(rho > 0.0)) throw std::invalid_argument("submeanvalue_test: rho must be positive");
  return submean_scan(g, nodes, domain_radius, rho, tol, angles);
}

SubmeanReport submeanvalue_test(const GridFunction& g, double rho, double tol, int angles) {
  if (!(rho > 0.0)) throw std::invalid_argument("submeanvalue_test: rho must be positive");
  if (!(g.spec.h() <= rho / 8.0))
    throw std::invalid_argument("submeanvalue_test: grid coarser than rho/8");
  const PlanarFunction f = g.as_function();
  return submean_scan(f, g.spec, std::numeric_limits<double>::infinity(), rho, tol, angles);
}

}  // namespace remezlab
