#pragma once

#include <algorithm>
#include <complex>
#include <filesystem>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace remezlab {

using Complex = std::complex<double>;
using PlanarFunction = std::function<double(Complex)>;

/// Rectangular node lattice [x0, x1] x [y0, y1] with nx x ny nodes.
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double x0 = -1.0, x1 = 1.0;
  double y0 = -1.0, y1 = 1.0;

  /// Square lattice over [-radius, radius]^2.
  static GridSpec square(double radius, int nodes);

  double hx() const { return (x1 - x0) / (nx - 1); }
  double hy() const { return (y1 - y0) / (ny - 1); }
  double h() const { return std::max(hx(), hy()); }
  double x(int i) const { return x0 + i * hx(); }
  double y(int j) const { return y0 + j * hy(); }
  Complex node(int i, int j) const { return {x(i), y(j)}; }
  bool operator==(const GridSpec&) const = default;
};

/// Scalar field on a GridSpec. values(i, j) sits at (x_i, y_j); NaN marks
/// nodes outside the function's domain.
struct GridFunction {
  GridSpec spec;
  Eigen::MatrixXd values;

  GridFunction() = default;
  explicit GridFunction(GridSpec s, double fill = 0.0);

  static GridFunction sample(const GridSpec& spec, const PlanarFunction& f,
                             double domain_radius = std::numeric_limits<double>::infinity());

  double& operator()(int i, int j) { return values(i, j); }
  double operator()(int i, int j) const { return values(i, j); }
  /// Bilinear interpolation; NaN outside the grid or next to a NaN node.
  double interpolate(Complex z) const;
  PlanarFunction as_function() const;
};

/// Binary layout: int64 nx, int64 ny, float64 x0, x1, y0, y1, then nx*ny
/// float64 values with x fastest (row j holds y_j), all little-endian.
/// A JSON sidecar `<path>.json` records the same header plus a description.
void write_grid(const std::filesystem::path& path, const GridFunction& grid,
                const std::string& description = {});
GridFunction read_grid(const std::filesystem::path& path);
/// CSV with header x,y,value; one line per node, NaN nodes written as "nan".
void write_grid_csv(const std::filesystem::path& path, const GridFunction& grid);

}  // namespace remezlab
