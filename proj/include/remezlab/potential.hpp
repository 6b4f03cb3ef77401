#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "remezlab/grid.hpp"

namespace remezlab {

struct Disk {
  Complex center;
  double radius = 0.0;
};

struct Segment {
  Complex a;
  Complex b;
};

/// Union of closed disks and segments in the plane.
class CompactSet2D {
 public:
  CompactSet2D(std::vector<Disk> disks, std::vector<Segment> segments);

  static CompactSet2D disk(Complex center, double radius);
  static CompactSet2D segment(Complex a, Complex b);

  const std::vector<Disk>& disks() const { return disks_; }
  const std::vector<Segment>& segments() const { return segments_; }

  /// Signed distance to K with segments thickened by `thickness`:
  /// negative inside disks, zero on K.
  double distance(Complex z, double thickness = 0.0) const;
  bool contains(Complex z, double thickness = 0.0) const { return distance(z, thickness) <= 0.0; }
  /// Nearest point of K.
  Complex project(Complex z) const;
  /// max |z| over K.
  double outer_radius() const;
  /// Quasi-uniform points of K: disk boundaries and interiors, segments
  /// including their endpoints.
  std::vector<Complex> candidates(int count) const;

 private:
  std::vector<Disk> disks_;
  std::vector<Segment> segments_;
};

enum class NodeKind : std::uint8_t { Interior, Boundary, Obstacle, Outside };

/// Discrete relative extremal function on a square lattice over
/// [-R, R]^2. Obstacle nodes hold -1, boundary and outside nodes 0.
struct Grid2D {
  GridFunction u;
  Eigen::Matrix<NodeKind, Eigen::Dynamic, Eigen::Dynamic> mask;
  double outer_radius = 1.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct RelaxationOptions {
  int nodes = 513;  // per axis
  double tolerance = 1e-10;
  int max_sweeps = 200000;
  bool warm_start = true;
};

/// Discrete Dirichlet problem: -1 on K, 0 on |z| = R, harmonic in between.
/// Boundaries are placed at their exact crossing points along grid lines
/// (Shortley-Weller), with segments thickened to half a grid spacing, and
/// the system is relaxed by red-black SOR until the largest update scaled
/// residual is below `tolerance`.
Grid2D relative_extremal(const CompactSet2D& k, double outer_radius,
                         const RelaxationOptions& options = {});

/// Outward flux of u across |z| = contour_radius: central-difference
/// gradients interpolated bilinearly at `angles` points, trapezoid rule.
double capacity(const Grid2D& u, double contour_radius, int angles = 720);

/// Smallest admissible contour for `k`: six grid cells outside K, enough to
/// keep the 4x4 gradient stencil off the obstacle.
double min_contour_radius(const Grid2D& u, const CompactSet2D& k);

struct FeketeOptions {
  int candidates = 4096;
  int max_sweeps = 500;
  int polish_rounds = 2000;
};

struct FeketeResult {
  int m = 0;
  std::vector<Complex> points;
  double delta = 0.0;
  int iterations = 0;
  bool converged = false;
};

void to_json(nlohmann::json& j, const FeketeResult& r);

/// exp(2 / (m (m - 1)) * sum_{i<j} log |z_i - z_j|).
double transfinite_delta(const std::vector<Complex>& points);

/// Single-point exchange over a candidate set of K, then coordinate ascent
/// with projection onto K.
FeketeResult fekete(const CompactSet2D& k, int m, std::uint64_t seed,
                    const FeketeOptions& options = {});

struct AlexanderTaylorReport {
  double delta_m = 0.0;
  double cap = 0.0;
  double bound = 0.0;   // exp(-2 pi / cap)
  double margin = 0.0;  // bound (1 + tau) - delta_m
  bool pass = false;
  bool converged = false;
};

void to_json(nlohmann::json& j, const AlexanderTaylorReport& r);

/// delta_m <= exp(-2 pi / cap(K, D_R)) (1 + tau).
AlexanderTaylorReport alexander_taylor_check(const CompactSet2D& k, double outer_radius, int m,
                                             std::uint64_t seed, double tau = 0.05,
                                             const RelaxationOptions& grid = {});

/// max(0, log(|z - x| / t)).
double l_extremal_disk(Complex z, Complex center, double radius);

/// max over |u| = 1 of |sum_j coeffs[j] u^j|, refined around sampled peaks.
double circle_max(const std::vector<Complex>& coeffs, int samples = 0);

struct RepresentationReport {
  double max_excess = 0.0;        // over every tested P and z, value - E(z)
  double monomial_error = 0.0;    // max |value - E(z)| for ((w - x) / t)^k
  std::vector<double> chebyshev;  // per degree, min over z of E(z) - value
  int tested = 0;
  bool pass = false;
};

void to_json(nlohmann::json& j, const RepresentationReport& r);

/// log |P(z)| / deg P for polynomials normalized to sup <= 1 on the disk:
/// random complex coefficients, monomials in (w - x) / t and scaled
/// Chebyshev polynomials, degrees 1..degree_cap. Passes when no value
/// exceeds l_extremal_disk(z) + tol and monomials match it to 1e-12.
RepresentationReport polynomial_representation_check(Complex center, double radius,
                                                     const std::vector<Complex>& zs,
                                                     int degree_cap, int trials,
                                                     std::uint64_t seed, double tol = 1e-9);

}  // namespace remezlab
