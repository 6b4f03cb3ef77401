#include "remezlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace remezlab {

double unit_ball_volume(int n) {
  if (n < 1) throw std::invalid_argument("unit_ball_volume: n must be >= 1");
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

Ball::Ball(Vector c, double r) : center(std::move(c)), radius(r) {
  if (center.size() < 1) throw std::invalid_argument("Ball: empty center");
  if (!(radius > 0.0)) throw std::invalid_argument("Ball: radius must be positive");
}

double Ball::volume() const {
  return unit_ball_volume(dimension()) * std::pow(radius, dimension());
}

bool Ball::contains(const Vector& x, double slack) const {
  return (x - center).norm() <= radius * (1.0 + slack);
}

Vector Ball::clamp(const Vector& x) const {
  const Vector d = x - center;
  const double r = d.norm();
  if (r <= radius) return x;
  return center + (radius / r) * d;
}

double Box::volume() const { return (hi - lo).cwiseMax(0.0).prod(); }

bool Box::contains(const Vector& x) const {
  return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
}

Vector Box::clamp(const Vector& x) const { return x.cwiseMax(lo).cwiseMin(hi); }

bool Box::overlaps(const Box& other) const {
  return (lo.array() < other.hi.array()).all() &&
         (other.lo.array() < hi.array()).all();
}

std::vector<Box> box_difference(const Box& a, const Box& b) {
  if (!a.overlaps(b)) return {a};
  std::vector<Box> pieces;
  Box rest = a;
  for (int d = 0; d < a.dimension(); ++d) {
    if (rest.lo[d] < b.lo[d]) {
      Box piece = rest;
      piece.hi[d] = b.lo[d];
      pieces.push_back(piece);
      rest.lo[d] = b.lo[d];
    }
    if (rest.hi[d] > b.hi[d]) {
      Box piece = rest;
      piece.lo[d] = b.hi[d];
      pieces.push_back(piece);
      rest.hi[d] = b.hi[d];
    }
  }
  return pieces;
}

namespace {

double farthest_corner_distance(const Box& box, const Vector& center) {
  const Vector far = (box.lo - center).cwiseAbs().cwiseMax((box.hi - center).cwiseAbs());
  return far.norm();
}

}  // namespace

MeasurableSet::MeasurableSet(Ball ambient, std::span<const Box> boxes)
    : ambient_(std::move(ambient)) {
  const int n = ambient_.dimension();
  for (const Box& box : boxes) {
    if (box.dimension() != n || box.hi.size() != n)
      throw std::invalid_argument("MeasurableSet: box dimension mismatch");
    if ((box.hi.array() < box.lo.array()).any())
      throw std::invalid_argument("MeasurableSet: box with hi < lo");
    if (farthest_corner_distance(box, ambient_.center) > ambient_.radius * (1.0 + 1e-12))
      throw std::invalid_argument("MeasurableSet: box leaves the ambient ball");
    std::vector<Box> pieces{box};
    for (const Box& accepted : boxes_) {
      std::vector<Box> next;
      for (const Box& piece : pieces) {
        auto diff = box_difference(piece, accepted);
        next.insert(next.end(), diff.begin(), diff.end());
      }
      pieces = std::move(next);
    }
    for (Box& piece : pieces)
      if (piece.volume() > 0.0) boxes_.push_back(std::move(piece));
  }
  if (!(measure() > 0.0))
    throw std::invalid_argument("MeasurableSet: set has zero measure");
}

double MeasurableSet::measure() const {
  double total = 0.0;
  for (const Box& box : boxes_) total += box.volume();
  return total;
}

bool MeasurableSet::contains(const Vector& x) const { return locate(x).has_value(); }

std::optional<std::size_t> MeasurableSet::locate(const Vector& x) const {
  for (std::size_t i = 0; i < boxes_.size(); ++i)
    if (boxes_[i].contains(x)) return i;
  return std::nullopt;
}

Vector MeasurableSet::sample(std::mt19937_64& rng) const {
  std::vector<double> volumes;
  volumes.reserve(boxes_.size());
  for (const Box& box : boxes_) volumes.push_back(box.volume());
  std::discrete_distribution<std::size_t> pick(volumes.begin(), volumes.end());
  const Box& box = boxes_[pick(rng)];
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector x(box.dimension());
  for (int d = 0; d < box.dimension(); ++d)
    x[d] = box.lo[d] + unit(rng) * (box.hi[d] - box.lo[d]);
  return x;
}

void to_json(nlohmann::json& j, const Ball& b) {
  j = nlohmann::json{{"x", std::vector<double>(b.center.begin(), b.center.end())},
                     {"t", b.radius}};
}

void from_json(const nlohmann::json& j, Ball& b) {
  const auto x = j.at("x").get<std::vector<double>>();
  b = Ball(Eigen::Map<const Vector>(x.data(), static_cast<Eigen::Index>(x.size())),
           j.at("t").get<double>());
}

nlohmann::json to_json(const MeasurableSet& set) {
  nlohmann::json boxes = nlohmann::json::array();
  for (const Box& box : set.boxes())
    boxes.push_back({{"lo", std::vector<double>(box.lo.begin(), box.lo.end())},
                     {"hi", std::vector<double>(box.hi.begin(), box.hi.end())}});
  return {{"ambient", set.ambient()}, {"boxes", boxes}};
}

MeasurableSet measurable_set_from_json(const nlohmann::json& j) {
  const Ball ambient = j.at("ambient").get<Ball>();
  std::vector<Box> boxes;
  for (const auto& b : j.at("boxes")) {
    const auto lo = b.at("lo").get<std::vector<double>>();
    const auto hi = b.at("hi").get<std::vector<double>>();
    boxes.push_back({Eigen::Map<const Vector>(lo.data(), static_cast<Eigen::Index>(lo.size())),
                     Eigen::Map<const Vector>(hi.data(), static_cast<Eigen::Index>(hi.size()))});
  }
  return MeasurableSet(ambient, boxes);
}

namespace {

// Random box centred at a uniform point of the ball, sized so its farthest
// corner stays inside.
Box random_inner_box(const Ball& ball, std::mt19937_64& rng) {
  const int n = ball.dimension();
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector dir(n);
  for (int d = 0; d < n; ++d) dir[d] = gauss(rng);
  dir.normalize();
  const double rho = 0.9 * ball.radius * std::pow(unit(rng), 1.0 / n);
  const Vector offset = rho * dir;
  Vector shape(n);
  for (int d = 0; d < n; ++d) shape[d] = 0.15 + unit(rng);
  // Largest s with || |offset| + s * shape || = radius.
  const Vector a = offset.cwiseAbs();
  const double qa = shape.squaredNorm();
  const double qb = 2.0 * a.dot(shape);
  const double qc = a.squaredNorm() - ball.radius * ball.radius;
  const double s = (-qb + std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa);
  const Vector half = (0.25 + 0.75 * unit(rng)) * s * shape;
  return Box{ball.center + offset - half, ball.center + offset + half};
}

}  // namespace

MeasurableSet random_box_union(const Ball& ball, int count, double min_ratio,
                               std::mt19937_64& rng) {
  if (count < 1) throw std::invalid_argument("random_box_union: count must be >= 1");
  std::uniform_int_distribution<int> how_many(1, count);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Box> boxes;
    const int m = how_many(rng);
    for (int i = 0; i < m; ++i) boxes.push_back(random_inner_box(ball, rng));
    MeasurableSet set(ball, boxes);
    if (set.measure() >= min_ratio * ball.volume()) return set;
  }
  throw std::runtime_error("random_box_union: could not reach the requested measure ratio");
}

Ray::Ray(Vector o, Vector d) : origin(std::move(o)), direction(std::move(d)) {
  const double norm = direction.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("Ray: zero direction");
  direction /= norm;
}

std::pair<double, double> clip(const Ray& ray, const Box& box) {
  double s0 = 0.0;
  double s1 = std::numeric_limits<double>::infinity();
  for (int d = 0; d < box.dimension(); ++d) {
    const double o = ray.origin[d];
    const double v = ray.direction[d];
    if (v == 0.0) {
      if (o < box.lo[d] || o > box.hi[d]) return {0.0, 0.0};
      continue;
    }
    double a = (box.lo[d] - o) / v;
    double b = (box.hi[d] - o) / v;
    if (a > b) std::swap(a, b);
    s0 = std::max(s0, a);
    s1 = std::min(s1, b);
    if (s1 <= s0) return {0.0, 0.0};
  }
  return {s0, s1};
}

std::pair<double, double> ray_section_lengths(const Ray& ray, const Ball& ball,
                                              const MeasurableSet& set) {
  const Vector rel = ray.origin - ball.center;
  const double b = ray.direction.dot(rel);
  const double c = rel.squaredNorm() - ball.radius * ball.radius;
  const double disc = b * b - c;
  double ball_length = 0.0;
  if (disc > 0.0) {
    const double root = std::sqrt(disc);
    ball_length = std::max(0.0, (-b + root) - std::max(0.0, -b - root));
  }
  double set_length = 0.0;
  for (const Box& box : set.boxes()) {
    const auto [s0, s1] = clip(ray, box);
    if (s1 > s0) set_length += s1 - s0;
  }
  return {ball_length, set_length};
}

std::vector<Vector> sample_directions(int n, int count, std::uint64_t seed) {
  if (n < 1 || count < 1) throw std::invalid_argument("sample_directions: bad arguments");
  std::vector<Vector> dirs;
  if (n == 1) {
    dirs.push_back(Vector::Constant(1, 1.0));
    dirs.push_back(Vector::Constant(1, -1.0));
    return dirs;
  }
  dirs.reserve(count);
  if (n == 2) {
    for (int j = 0; j < count; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / count;
      dirs.push_back((Vector(2) << std::cos(phi), std::sin(phi)).finished());
    }
  } else if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < count; ++j) {
      const double z = 1.0 - (2.0 * j + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * j;
      dirs.push_back((Vector(3) << r * std::cos(phi), r * std::sin(phi), z).finished());
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (int j = 0; j < count; ++j) {
      Vector v(n);
      for (int d = 0; d < n; ++d) v[d] = gauss(rng);
      dirs.push_back(v.normalized());
    }
  }
  return dirs;
}

int default_ray_count(int n) { return n <= 2 ? 4096 : 16384; }

BestRay best_ray(const Ball& ball, const MeasurableSet& set, const Vector& origin,
                 int count) {
  if (count < 1) throw std::invalid_argument("best_ray: ray count must be >= 1");
  if (!ball.contains(origin, 1e-12))
    throw std::invalid_argument("best_ray: origin outside the ball");
  std::optional<BestRay> best;
  for (const Vector& dir : sample_directions(ball.dimension(), count)) {
    Ray ray(origin, dir);
    const auto [ball_len, set_len] = ray_section_lengths(ray, ball, set);
    if (set_len <= 1e-15) continue;
    const double ratio = ball_len / set_len;
    if (!best || ratio < best->ratio) best = BestRay{ray, ratio};
  }
  if (!best)
    throw std::runtime_error("best_ray: every sampled ray misses the set (" +
                             std::to_string(count) + " directions); increase the count");
  return *best;
}

SliceGeometry slice_geometry(double a, double t_f) {
  if (!(a > 1.0)) throw std::invalid_argument("slice_geometry: a must exceed 1");
  if (!(t_f >= 0.0) || !(t_f < 1.0))
    throw std::invalid_argument("slice_geometry: t_f must lie in [0, 1)");
  const double inner = 0.5 * (a + 1.0);
  if (t_f >= inner)
    throw std::invalid_argument("slice_geometry: slice misses the inner ball");
  SliceGeometry g{a, t_f, std::sqrt(a * a - t_f * t_f), std::sqrt(inner * inner - t_f * t_f), 0.0};
  g.ratio = g.r_f_inner / g.r_f;
  if (g.ratio > SliceGeometry::ratio_bound(a) * (1.0 + 1e-15))
    throw std::logic_error("slice_geometry: ratio exceeds (a + 1) / (2a)");
  return g;
}

}  // namespace remezlab
