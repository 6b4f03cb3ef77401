#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace remezlab {

using Vector = Eigen::VectorXd;

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Euclidean ball B(x, t) in R^n.
struct Ball {
  Vector center;
  double radius = 1.0;

  Ball() = default;
  Ball(Vector center, double radius);

  int dimension() const { return static_cast<int>(center.size()); }
  double volume() const;
  bool contains(const Vector& x, double slack = 0.0) const;
  /// Radial projection onto the closed ball.
  Vector clamp(const Vector& x) const;
};

/// Closed axis-aligned box [lo, hi].
struct Box {
  Vector lo;
  Vector hi;

  int dimension() const { return static_cast<int>(lo.size()); }
  double volume() const;
  bool contains(const Vector& x) const;
  Vector clamp(const Vector& x) const;
  bool overlaps(const Box& other) const;
};

/// Pieces of `a` not covered by `b`; at most 2n disjoint boxes.
std::vector<Box> box_difference(const Box& a, const Box& b);

/// A finite union of axis-aligned boxes inside an ambient ball.
///
/// Boxes are made pairwise disjoint at construction: each incoming box is
/// split against the ones already accepted, so the measure is an exact sum.
class MeasurableSet {
 public:
  MeasurableSet(Ball ambient, std::span<const Box> boxes);

  const Ball& ambient() const { return ambient_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  int dimension() const { return ambient_.dimension(); }
  double measure() const;
  bool contains(const Vector& x) const;
  /// Index of a box containing x, if any.
  std::optional<std::size_t> locate(const Vector& x) const;
  /// Uniform sample from the set.
  Vector sample(std::mt19937_64& rng) const;

 private:
  Ball ambient_;
  std::vector<Box> boxes_;
};

void to_json(nlohmann::json& j, const Ball& b);
void from_json(const nlohmann::json& j, Ball& b);
nlohmann::json to_json(const MeasurableSet& set);
MeasurableSet measurable_set_from_json(const nlohmann::json& j);

/// Random union of `count` boxes inside `ball`, resampled until its measure
/// ratio |set| / |ball| is at least `min_ratio`.
MeasurableSet random_box_union(const Ball& ball, int count, double min_ratio,
                               std::mt19937_64& rng);

struct Ray {
  Vector origin;
  Vector direction;

  Ray(Vector origin, Vector direction);  // normalizes direction
  Vector at(double s) const { return origin + s * direction; }
};

/// Parameter interval [s0, s1] (s >= 0) where the ray lies in the box; empty
/// when s1 <= s0.
std::pair<double, double> clip(const Ray& ray, const Box& box);

/// (length of ray within ball, length of ray within set).
std::pair<double, double> ray_section_lengths(const Ray& ray, const Ball& ball,
                                              const MeasurableSet& set);

/// Quasi-uniform unit directions: evenly spaced angles for n = 2, a Fibonacci
/// sphere for n = 3, +-1 for n = 1 and normalized Gaussian draws otherwise.
std::vector<Vector> sample_directions(int n, int count,
                                      std::uint64_t seed = 0x5eed);

struct BestRay {
  Ray ray;
  double ratio;  // mes1(B ∩ l) / mes1(ω ∩ l)
};

/// Ray from `origin` minimizing the ball-to-set length ratio over `count`
/// sampled directions. Throws std::runtime_error if every ray misses the set.
BestRay best_ray(const Ball& ball, const MeasurableSet& set,
                 const Vector& origin, int count);

/// Default direction budget: 4096 in the plane, 16384 in space.
int default_ray_count(int n);

/// Radii of the two complex-line slices through B_c(0, a) and
/// B_c(0, (a + 1) / 2) at distance t_f from the origin.
struct SliceGeometry {
  double a;
  double t_f;
  double r_f;
  double r_f_inner;
  double ratio;  // r_f_inner / r_f

  static double ratio_bound(double a) { return (a + 1.0) / (2.0 * a); }
};

SliceGeometry slice_geometry(double a, double t_f);

}  // namespace remezlab
