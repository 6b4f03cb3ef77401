#include "remezlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "remezlab/poly.hpp"

namespace remezlab {

namespace {

constexpr double kPi = std::numbers::pi;

Complex nearest_on_segment(const Segment& s, Complex z) {
  const Complex d = s.b - s.a;
  const double t = std::clamp(std::real((z - s.a) * std::conj(d)) / std::norm(d), 0.0, 1.0);
  return s.a + t * d;
}

}  // namespace

CompactSet2D::CompactSet2D(std::vector<Disk> disks, std::vector<Segment> segments)
    : disks_(std::move(disks)), segments_(std::move(segments)) {
  if (disks_.empty() && segments_.empty()) throw std::invalid_argument("CompactSet2D: empty set");
  for (const Disk& d : disks_)
    if (!(d.radius > 0.0)) throw std::invalid_argument("CompactSet2D: disk radius must be > 0");
  for (const Segment& s : segments_)
    if (!(std::abs(s.b - s.a) > 0.0))
      throw std::invalid_argument("CompactSet2D: degenerate segment");
}

CompactSet2D CompactSet2D::disk(Complex center, double radius) {
  return CompactSet2D({{center, radius}}, {});
}

CompactSet2D CompactSet2D::segment(Complex a, Complex b) { return CompactSet2D({}, {{a, b}}); }

double CompactSet2D::distance(Complex z, double thickness) const {
  double d = std::numeric_limits<double>::infinity();
  for (const Disk& k : disks_) d = std::min(d, std::abs(z - k.center) - k.radius);
  for (const Segment& s : segments_)
    d = std::min(d, std::abs(z - nearest_on_segment(s, z)) - thickness);
  return d;
}

Complex CompactSet2D::project(Complex z) const {
  Complex best = z;
  double best_d = std::numeric_limits<double>::infinity();
  for (const Disk& k : disks_) {
    const double r = std::abs(z - k.center);
    const Complex p = r <= k.radius ? z : k.center + (z - k.center) * (k.radius / r);
    if (std::abs(z - p) < best_d) {
      best_d = std::abs(z - p);
      best = p;
    }
  }
  for (const Segment& s : segments_) {
    const Complex p = nearest_on_segment(s, z);
    if (std::abs(z - p) < best_d) {
      best_d = std::abs(z - p);
      best = p;
    }
  }
  return best;
}

double CompactSet2D::outer_radius() const {
  double r = 0.0;
  for (const Disk& k : disks_) r = std::max(r, std::abs(k.center) + k.radius);
  for (const Segment& s : segments_) r = std::max({r, std::abs(s.a), std::abs(s.b)});
  return r;
}

std::vector<Complex> CompactSet2D::candidates(int count) const {
  const int parts = static_cast<int>(disks_.size() + segments_.size());
  const int share = std::max(8, count / parts);
  std::vector<Complex> out;
  for (const Disk& k : disks_) {
    const int rim = share / 2;
    for (int i = 0; i < rim; ++i) out.push_back(k.center + std::polar(k.radius, 2 * kPi * i / rim));
    const double h = k.radius * std::sqrt(kPi / std::max(1, share - rim));
    for (double x = -k.radius + h / 2; x < k.radius; x += h)
      for (double y = -k.radius + h / 2; y < k.radius; y += h)
        if (std::hypot(x, y) < k.radius - h / 4) out.push_back(k.center + Complex(x, y));
  }
  for (const Segment& s : segments_)
    for (int i = 0; i < share; ++i) out.push_back(s.a + (s.b - s.a) * (double(i) / (share - 1)));
  return out;
}

namespace {

struct Stencil {
  int node;
  int nb[4];
  double a[4];
  double fixed;  // boundary contributions
  double diag;
};

// First crossing of phi <= 0 on [0, h] along p + t e, with phi(p) > 0.
template <class Phi>
double crossing(const Phi& phi, Complex p, Complex e, double h) {
  double lo = 0.0, hi = h;
  for (int it = 0; it < 80 && hi - lo > 1e-15 * h; ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi(p + mid * e) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

Grid2D solve(const CompactSet2D& k, double R, const RelaxationOptions& opt) {
  const int N = opt.nodes;
  const GridSpec spec = GridSpec::square(R, N);
  const double h = spec.hx();
  const double thickness = 0.5 * h;
  auto phi_out = [&](Complex z) { return R - std::abs(z); };
  auto phi_k = [&](Complex z) { return k.distance(z, thickness); };

  Grid2D g;
  g.outer_radius = R;
  g.u = GridFunction(spec, 0.0);
  g.mask.resize(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      const Complex z = spec.node(i, j);
      if (phi_k(z) <= 0.0) {
        g.mask(i, j) = NodeKind::Obstacle;
        g.u(i, j) = -1.0;
      } else if (phi_out(z) <= 0.0) {
        g.mask(i, j) = NodeKind::Outside;
      } else {
        g.mask(i, j) = NodeKind::Interior;
      }
    }

  const int di[4] = {1, -1, 0, 0};
  const int dj[4] = {0, 0, 1, -1};
  std::vector<Stencil> red, black;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      if (g.mask(i, j) != NodeKind::Interior) continue;
      const Complex z = spec.node(i, j);
      double dist[4];
      double value[4];
      int nb[4];
      for (int q = 0; q < 4; ++q) {
        const int ii = i + di[q], jj = j + dj[q];
        const bool inside = ii >= 0 && jj >= 0 && ii < N && jj < N &&
                            g.mask(ii, jj) == NodeKind::Interior;
        if (inside) {
          dist[q] = h;
          nb[q] = ii + N * jj;
          value[q] = 0.0;
          continue;
        }
        const Complex e(di[q], dj[q]);
        const double t_out = phi_out(z + h * e) <= 0.0 ? crossing(phi_out, z, e, h) : 2 * h;
        const double t_k = phi_k(z + h * e) <= 0.0 ? crossing(phi_k, z, e, h) : 2 * h;
        dist[q] = std::max(std::min(t_out, t_k), 1e-8 * h);
        value[q] = t_k < t_out ? -1.0 : 0.0;
        nb[q] = -1;
      }
      Stencil s{i + N * j, {}, {}, 0.0, 0.0};
      for (int axis = 0; axis < 2; ++axis) {
        const double hp = dist[2 * axis], hm = dist[2 * axis + 1];
        const double ap = 2.0 / (hp * (hp + hm)), am = 2.0 / (hm * (hp + hm));
        s.a[2 * axis] = ap;
        s.a[2 * axis + 1] = am;
      }
      for (int q = 0; q < 4; ++q) {
        s.nb[q] = nb[q];
        s.diag += s.a[q];
        if (nb[q] < 0) s.fixed += s.a[q] * value[q];
      }
      ((i + j) % 2 == 0 ? red : black).push_back(s);
    }

  // Boundary: non-interior, non-obstacle nodes next to an interior one.
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      if (g.mask(i, j) != NodeKind::Outside) continue;
      for (int q = 0; q < 4; ++q) {
        const int ii = i + di[q], jj = j + dj[q];
        if (ii >= 0 && jj >= 0 && ii < N && jj < N && g.mask(ii, jj) == NodeKind::Interior) {
          g.mask(i, j) = NodeKind::Boundary;
          break;
        }
      }
    }

  double* u = g.u.values.data();
  if (opt.warm_start && N > 65 && (N - 1) % 2 == 0) {
    RelaxationOptions coarse = opt;
    coarse.nodes = (N - 1) / 2 + 1;
    coarse.tolerance = std::max(opt.tolerance, 1e-8);
    const Grid2D c = solve(k, R, coarse);
    for (const auto* list : {&red, &black})
      for (const Stencil& s : *list) {
        const double v = c.u.interpolate(spec.node(s.node % N, s.node / N));
        u[s.node] = std::isfinite(v) ? std::clamp(v, -1.0, 0.0) : -0.5;
      }
  } else {
    for (const auto* list : {&red, &black})
      for (const Stencil& s : *list) u[s.node] = -0.5;
  }

  const double omega = 2.0 / (1.0 + std::sin(kPi / (N - 1)));
  g.converged = red.empty() && black.empty();
  for (int sweep = 0; sweep < opt.max_sweeps && !g.converged; ++sweep) {
    double worst = 0.0;
    for (const auto* list : {&red, &black})
      for (const Stencil& s : *list) {
        double acc = s.fixed;
        for (int q = 0; q < 4; ++q)
          if (s.nb[q] >= 0) acc += s.a[q] * u[s.nb[q]];
        const double delta = acc / s.diag - u[s.node];
        worst = std::max(worst, std::abs(delta));
        u[s.node] += omega * delta;
      }
    g.iterations = sweep + 1;
    g.residual = worst;
    if (worst < opt.tolerance) g.converged = true;
  }
  return g;
}

}  // namespace

Grid2D relative_extremal(const CompactSet2D& k, double outer_radius,
                         const RelaxationOptions& options) {
  if (!(outer_radius > 0.0)) throw std::invalid_argument("relative_extremal: R must be > 0");
  if (k.outer_radius() > outer_radius * (1.0 + 1e-12))
    throw std::invalid_argument("relative_extremal: K extends beyond the outer disk");
  if (options.nodes < 5) throw std::invalid_argument("relative_extremal: grid too small");
  return solve(k, outer_radius, options);
}

namespace {

Complex gradient_at(const Grid2D& g, Complex z) {
  const GridSpec& s = g.u.spec;
  const double h = s.hx();
  const double fu = (z.real() - s.x0) / h;
  const double fv = (z.imag() - s.y0) / h;
  const int i = static_cast<int>(std::floor(fu));
  const int j = static_cast<int>(std::floor(fv));
  if (i < 1 || j < 1 || i + 2 >= s.nx || j + 2 >= s.ny)
    throw std::invalid_argument("capacity: contour leaves the grid");
  for (int jj = j - 1; jj <= j + 2; ++jj)
    for (int ii = i - 1; ii <= i + 2; ++ii)
      if (g.mask(ii, jj) != NodeKind::Interior)
        throw std::invalid_argument("capacity: contour too close to K or to the outer circle");
  auto grad = [&](int a, int b) {
    return Complex((g.u(a + 1, b) - g.u(a - 1, b)) / (2 * h),
                   (g.u(a, b + 1) - g.u(a, b - 1)) / (2 * h));
  };
  const double x = fu - i, y = fv - j;
  return (1 - x) * (1 - y) * grad(i, j) + x * (1 - y) * grad(i + 1, j) +
         (1 - x) * y * grad(i, j + 1) + x * y * grad(i + 1, j + 1);
}

}  // namespace

double capacity(const Grid2D& u, double contour_radius, int angles) {
  if (!(contour_radius > 0.0)) throw std::invalid_argument("capacity: radius must be > 0");
  double flux = 0.0;
  for (int m = 0; m < angles; ++m) {
    const Complex nu = std::polar(1.0, 2 * kPi * m / angles);
    const Complex gr = gradient_at(u, contour_radius * nu);
    flux += gr.real() * nu.real() + gr.imag() * nu.imag();
  }
  return flux * contour_radius * 2 * kPi / angles;
}

double min_contour_radius(const Grid2D& u, const CompactSet2D& k) {
  return k.outer_radius() + 6.0 * u.u.spec.hx();
}

void to_json(nlohmann::json& j, const FeketeResult& r) {
  nlohmann::json pts = nlohmann::json::array();
  for (Complex z : r.points) pts.push_back({z.real(), z.imag()});
  j = {{"m", r.m},
       {"points", pts},
       {"delta_m", r.delta},
       {"iterations", r.iterations},
       {"converged", r.converged}};
}

double transfinite_delta(const std::vector<Complex>& points) {
  const std::size_t m = points.size();
  if (m < 2) throw std::invalid_argument("transfinite_delta: need at least two points");
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) s += std::log(std::abs(points[i] - points[j]));
  return std::exp(2.0 * s / (double(m) * (m - 1)));
}

FeketeResult fekete(const CompactSet2D& k, int m, std::uint64_t seed,
                    const FeketeOptions& options) {
  if (m < 2) throw std::invalid_argument("fekete: m must be >= 2");
  const std::vector<Complex> cand = k.candidates(std::max(options.candidates, 4 * m));
  const int C = static_cast<int>(cand.size());
  std::mt19937_64 rng(seed);
  std::vector<int> order(C);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> idx(order.begin(), order.begin() + m);

  std::vector<char> occupied(C, 0);
  for (int i : idx) occupied[i] = 1;
  // P[c] = sum over points j not sitting on c of log |c - z_j|.
  std::vector<double> P(C, 0.0);
  auto add_point = [&](int at, double sign) {
    for (int c = 0; c < C; ++c)
      if (c != at) P[c] += sign * std::log(std::abs(cand[c] - cand[at]));
  };
  for (int i : idx) add_point(i, 1.0);

  FeketeResult res;
  res.m = m;
  bool moved = true;
  int sweep = 0;
  for (; sweep < options.max_sweeps && moved; ++sweep) {
    moved = false;
    for (int i = 0; i < m; ++i) {
      const int cur = idx[i];
      int best = cur;
      double best_val = P[cur];
      for (int c = 0; c < C; ++c) {
        if (occupied[c]) continue;
        const double v = P[c] - std::log(std::abs(cand[c] - cand[cur]));
        if (v > best_val + 1e-12 * std::max(1.0, std::abs(best_val))) {
          best_val = v;
          best = c;
        }
      }
      if (best == cur) continue;
      add_point(cur, -1.0);
      add_point(best, 1.0);
      occupied[cur] = 0;
      occupied[best] = 1;
      idx[i] = best;
      moved = true;
    }
  }
  res.iterations = sweep;

  std::vector<Complex> z(m);
  for (int i = 0; i < m; ++i) z[i] = cand[idx[i]];
  double spacing = std::numeric_limits<double>::infinity();
  for (int c = 1; c < C; ++c) spacing = std::min(spacing, std::abs(cand[c] - cand[c - 1]));
  std::vector<double> step(m, spacing);
  bool settled = false;
  for (int round = 0; round < options.polish_rounds && !settled; ++round) {
    for (int i = 0; i < m; ++i) {
      Complex grad = 0.0;
      for (int j = 0; j < m; ++j)
        if (j != i) grad += (z[i] - z[j]) / std::norm(z[i] - z[j]);
      if (std::abs(grad) == 0.0) continue;
      const Complex trial = k.project(z[i] + step[i] * grad / std::abs(grad));
      double gain = 0.0;
      for (int j = 0; j < m; ++j)
        if (j != i) gain += std::log(std::abs(trial - z[j]) / std::abs(z[i] - z[j]));
      if (gain > 0.0) {
        z[i] = trial;
        step[i] *= 1.5;
      } else {
        step[i] *= 0.5;
      }
    }
    settled = *std::max_element(step.begin(), step.end()) < 1e-12;
  }
  res.points = z;
  res.delta = transfinite_delta(z);
  res.converged = !moved && settled;
  return res;
}

void to_json(nlohmann::json& j, const AlexanderTaylorReport& r) {
  j = {{"delta_m", r.delta_m}, {"cap", r.cap},   {"bound", r.bound},
       {"margin", r.margin},   {"pass", r.pass}, {"converged", r.converged}};
}

AlexanderTaylorReport alexander_taylor_check(const CompactSet2D& k, double outer_radius, int m,
                                             std::uint64_t seed, double tau,
                                             const RelaxationOptions& grid) {
  const Grid2D u = relative_extremal(k, outer_radius, grid);
  const double contour = 0.5 * (k.outer_radius() + outer_radius);
  const FeketeResult f = fekete(k, m, seed);
  AlexanderTaylorReport r;
  r.cap = capacity(u, contour);
  r.delta_m = f.delta;
  r.bound = std::exp(-2 * kPi / r.cap);
  r.margin = r.bound * (1.0 + tau) - r.delta_m;
  r.pass = r.margin >= 0.0;
  r.converged = u.converged && f.converged;
  return r;
}

double l_extremal_disk(Complex z, Complex center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("l_extremal_disk: radius must be > 0");
  return std::max(0.0, std::log(std::abs(z - center) / radius));
}

namespace {

Complex horner(const std::vector<Complex>& c, Complex u) {
  Complex s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * u + *it;
  return s;
}

}  // namespace

double circle_max(const std::vector<Complex>& coeffs, int samples) {
  const int deg = static_cast<int>(coeffs.size()) - 1;
  const int n = samples > 0 ? samples : std::max(2048, 64 * (deg + 1));
  auto f = [&](double t) { return std::abs(horner(coeffs, std::polar(1.0, t))); };
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = f(2 * kPi * i / n);
  double best = *std::max_element(v.begin(), v.end());
  const double dt = 2 * kPi / n;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int i = 0; i < n; ++i) {
    if (v[i] < v[(i + n - 1) % n] || v[i] < v[(i + 1) % n]) continue;
    double a = (i - 1) * dt, b = (i + 1) * dt;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = f(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = f(x1);
      }
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

void to_json(nlohmann::json& j, const RepresentationReport& r) {
  j = {{"max_excess", r.max_excess}, {"monomial_error", r.monomial_error},
       {"chebyshev_gaps", r.chebyshev}, {"tested", r.tested}, {"pass", r.pass}};
}

RepresentationReport polynomial_representation_check(Complex center, double radius,
                                                     const std::vector<Complex>& zs,
                                                     int degree_cap, int trials,
                                                     std::uint64_t seed, double tol) {
  if (degree_cap < 1) throw std::invalid_argument("polynomial_representation_check: degree_cap");
  std::vector<Complex> us;
  for (Complex z : zs) {
    if (!(std::abs(z - center) > radius))
      throw std::invalid_argument("polynomial_representation_check: z inside the disk");
    us.push_back((z - center) / radius);
  }
  RepresentationReport rep;
  rep.max_excess = -std::numeric_limits<double>::infinity();
  auto score = [&](const std::vector<Complex>& c, int k, double norm, Complex u) {
    ++rep.tested;
    const double value = (std::log(std::abs(horner(c, u))) - std::log(norm)) / k;
    const double e = std::log(std::abs(u));
    rep.max_excess = std::max(rep.max_excess, value - e);
    return value - e;
  };

  for (int k = 1; k <= degree_cap; ++k) {
    std::vector<Complex> mono(k + 1, 0.0);
    mono[k] = 1.0;
    for (Complex u : us) rep.monomial_error = std::max(rep.monomial_error, std::abs(score(mono, k, 1.0, u)));

    const std::vector<double> t = chebyshev_poly(k).coefficients();
    const std::vector<Complex> tc(t.begin(), t.end());
    const double tn = circle_max(tc);
    double gap = std::numeric_limits<double>::infinity();
    for (Complex u : us) gap = std::min(gap, -score(tc, k, tn, u));
    rep.chebyshev.push_back(gap);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> degree(1, degree_cap);
  for (int trial = 0; trial < trials; ++trial) {
    const int k = degree(rng);
    std::vector<Complex> c(k + 1);
    for (Complex& x : c) x = {normal(rng), normal(rng)};
    const double norm = circle_max(c);
    for (Complex u : us) score(c, k, norm, u);
  }
  rep.pass = rep.max_excess <= tol && rep.monomial_error <= 1e-12;
  return rep;
}

}  // namespace remezlab
