#pragma once

#include <vector>

#include "remezlab/grid.hpp"
#include "remezlab/poly.hpp"
#include "remezlab/search.hpp"

namespace remezlab {

/// Value standing in for log 0 at zeros of a generator polynomial.
inline constexpr double kLogFloor = -1e6;

inline bool is_floored(double v) { return !(v > 0.5 * kLogFloor); }

/// log |v| with zeros mapped to kLogFloor.
double floored_log(double modulus);

/// f(z) = (log |p_c(z)| - M) / (k log r), where M estimates the supremum of
/// log |p_c| over the complex ball B_c(0, r). Constants give f == 0.
struct PshSample {
  MultiPoly generator;
  int degree = 0;
  double r = 2.0;
  double normalizer = 0.0;      // M
  double normalizer_gap = 0.0;  // heuristic gap of M, log units
  double unit_sup = 0.0;        // estimated sup of f over B_c(0, 1)
  double unit_sup_gap = 0.0;    // in f units
  double tau = 1e-3;
  bool class_ok = true;         // unit_sup >= -1 - tau

  /// k log r, or 0 for constants.
  double scale() const;
  /// f expressed through |p|.
  double from_modulus(double modulus) const;
  double operator()(const CVector& z) const;
  double at(const Vector& x) const;
  /// z -> f(z) for one complex variable; throws when n != 1.
  PlanarFunction planar() const;
};

PshSample make_fr_sample(const MultiPoly& p, double r, int levels = 30,
                         const SearchOptions& options = {}, double tau = 1e-3);

/// Radial bump c * exp(-1 / (1 - |x|^2)) supported in the unit ball of R^d,
/// normalized to unit mass.
struct MollifierKernel {
  int dimension = 2;
  double normalization = 0.0;

  static MollifierKernel bump(int dimension = 2);
  double profile(double s) const;
  double operator()(const Vector& x) const { return profile(x.norm()); }
  /// ∫ κ(x) |x|^power dx.
  double radial_moment(int power) const;
};

struct MollifyOptions {
  int radial_panels = 2;        // x 20 Gauss-Legendre nodes on [0, 1]
  int base_angles = 64;         // circle means start here and double
  int max_angles = 1 << 14;
  double angular_tolerance = 1e-13;
};

/// f_eps(w) = ∫ κ(z) f(w - eps z) on the nodes of `nodes` inside the
/// shrunk disk |w| < domain_radius - eps (NaN elsewhere). The integral is a
/// Gauss-Legendre rule in the radius times adaptive trapezoid circle means,
/// with the discrete weights renormalized to unit mass.
GridFunction mollify(const PlanarFunction& f, const GridSpec& nodes, double domain_radius,
                     double eps, const MollifierKernel& kernel = MollifierKernel::bump(),
                     const MollifyOptions& options = {});

/// Grid input: requires spacing <= eps / 4 and interpolates bilinearly.
/// The output keeps the input lattice; nodes whose eps-disk leaves the
/// finite part of the input are NaN.
GridFunction mollify(const GridFunction& f, double eps,
                     const MollifierKernel& kernel = MollifierKernel::bump(),
                     const MollifyOptions& options = {});

/// Parameters of the subharmonic continuation across the annulus
/// r(f) <= |z| < 1 beyond the disk of radius r(f).
struct ExtensionParams {
  double r = 0.5;     // inner radius, 0 < r < 1
  double r_f = 0.75;  // circle radius, in [(1 + 3r) / 4, (1 + r) / 2]
  double level = -1;  // C(r) < 0, lower bound of f on |z| = r_f

  static ExtensionParams make(double r, double r_f, double level);
  /// c_f = log(4 r_f / (3 + r)) / (2 C(r)) > 0.
  double c_f() const;
};

/// Scans concentric circles of the annulus (1+3r)/4 <= |z| <= (1+r)/2 and
/// returns the one maximizing min_{|z|=rho} f, with C(r) set to that
/// minimum. Throws if the minimum is not negative.
ExtensionParams choose_extension_params(const PlanarFunction& f, double r, int circles = 64,
                                        int angles = 720);

/// h = f on |z| < r_f, max(f, L) for r_f <= |z| < 1 and L beyond, where
/// L(z) = log(4|z| / (3 + r)) / c_f.
class SubharmonicExtension {
 public:
  SubharmonicExtension(PlanarFunction f, ExtensionParams params, int check_angles = 2048);

  double operator()(Complex z) const;
  double log_term(Complex z) const;
  const ExtensionParams& params() const { return params_; }

 private:
  PlanarFunction f_;
  ExtensionParams params_;
};

GridFunction extend_subharmonic(const PlanarFunction& f, const ExtensionParams& params,
                                const GridSpec& out, double radius);

/// max over finite nodes of h / c_f - log(1 + |z|).
double growth_constant(const GridFunction& h, double c_f);

struct SubmeanViolation {
  int i = 0;
  int j = 0;
  double value = 0.0;
  double mean = 0.0;
};

struct SubmeanReport {
  int tested = 0;
  int skipped = 0;
  std::vector<SubmeanViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Compares g at every node of `nodes` whose rho-circle stays inside
/// |z| <= domain_radius with the trapezoid mean over `angles` points of the
/// circle. A node is reported when g exceeds the mean by more than `tol`
/// and the excess survives re-averaging with up to 1024x more angles.
/// Floored and non-finite nodes are skipped.
SubmeanReport submeanvalue_test(const PlanarFunction& g, const GridSpec& nodes,
                                double domain_radius, double rho, double tol = 1e-6,
                                int angles = 64);

/// Grid input: requires spacing <= rho / 8; circle points are interpolated.
SubmeanReport submeanvalue_test(const GridFunction& g, double rho, double tol = 1e-6,
                                int angles = 64);

}  // namespace remezlab
