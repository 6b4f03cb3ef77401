#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "remezlab/poly.hpp"

namespace remezlab {

/// Interval [a, b] (point = (x)), circle S^1 (point = (theta)) or the unit
/// sphere S^2 (point = unit 3-vector).
struct BmoDomain {
  enum class Kind { Interval, Circle, Sphere };
  Kind kind = Kind::Circle;
  double a = 0.0;
  double b = 1.0;
  int angular_points = 128;  // sphere caps: trapezoid points in the azimuth
  int radial_panels = 4;     // sphere caps: 20-point Gauss-Legendre panels

  static BmoDomain interval(double a, double b);
  static BmoDomain circle();
  static BmoDomain sphere();

  double measure() const;
};

/// Domain point with inline storage (at most three coordinates).
using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using DomainFunction = std::function<double(const Point&)>;

/// Interval: [x - r, x + r] clipped to [a, b]; circle: the arc of angular
/// radius r about theta; sphere: the cap of geodesic radius r.
struct MetricBall {
  Point center;
  double radius = 0.0;
};

/// Parameter values where f has a logarithmic singularity. One-dimensional
/// integrals are split there (circle values are taken modulo 2 pi).
using Singularities = std::vector<double>;

/// (1 / |B|) ∫_B |f - f_B|.
double mean_oscillation(const DomainFunction& f, const BmoDomain& domain, const MetricBall& ball,
                        const Singularities& singular = {});

/// Mean of f over the ball.
double ball_average(const DomainFunction& f, const BmoDomain& domain, const MetricBall& ball,
                    const Singularities& singular = {});

struct BallFamily {
  int centers = 64;
  int levels = 7;  // radii rho_0 2^-j, j < levels; rho_0 = pi or (b - a) / 2
};

struct BmoReport {
  std::string description;
  int degree = 0;
  double norm = 0.0;
  MetricBall argmax;
  std::vector<double> oscillations;  // center-major, then radius
};

void to_json(nlohmann::json& j, const BmoReport& r);

std::vector<MetricBall> ball_family(const BmoDomain& domain, const BallFamily& family);

/// Max of mean_oscillation over the finite family: a lower bound of the
/// BMO norm.
BmoReport bmo_norm(const DomainFunction& f, const BmoDomain& domain, const BallFamily& family = {},
                   const Singularities& singular = {});

/// max |f| over the domain by sampling with local refinement (1-D domains)
/// or on the cap quadrature nodes of the whole sphere.
double sup_norm(const DomainFunction& f, const BmoDomain& domain);

/// (1 / |Y|) ∫_Y |log(|f| / norm)|, with norm = sup_Y |f| when 0 is passed.
double log_integrability(const DomainFunction& f, const BmoDomain& domain,
                         const Singularities& singular = {}, double norm = 0.0);

/// log |T_k(cos theta)| on S^1 and its zeros.
DomainFunction chebyshev_log_on_circle(int k);
Singularities chebyshev_circle_zeros(int k);

}  // namespace remezlab
