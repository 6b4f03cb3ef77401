#include "remezlab/grid.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace remezlab {

static_assert(std::endian::native == std::endian::little,
              "grid files are written in native little-endian order");

GridSpec GridSpec::square(double radius, int nodes) {
  if (nodes < 2) throw std::invalid_argument("GridSpec::square: need at least 2 nodes");
  return GridSpec{nodes, nodes, -radius, radius, -radius, radius};
}

GridFunction::GridFunction(GridSpec s, double fill)
    : spec(s), values(Eigen::MatrixXd::Constant(s.nx, s.ny, fill)) {
  if (s.nx < 2 || s.ny < 2) throw std::invalid_argument("GridFunction: need at least 2x2 nodes");
}

GridFunction GridFunction::sample(const GridSpec& spec, const PlanarFunction& f,
                                  double domain_radius) {
  GridFunction g(spec, std::numeric_limits<double>::quiet_NaN());
  for (int j = 0; j < spec.ny; ++j)
    for (int i = 0; i < spec.nx; ++i) {
      const Complex z = spec.node(i, j);
      if (std::abs(z) <= domain_radius) g(i, j) = f(z);
    }
  return g;
}

double GridFunction::interpolate(Complex z) const {
  const double u = (z.real() - spec.x0) / spec.hx();
  const double v = (z.imag() - spec.y0) / spec.hy();
  if (u < 0.0 || v < 0.0 || u > spec.nx - 1 || v > spec.ny - 1)
    return std::numeric_limits<double>::quiet_NaN();
  const int i = std::min(static_cast<int>(u), spec.nx - 2);
  const int j = std::min(static_cast<int>(v), spec.ny - 2);
  const double a = u - i;
  const double b = v - j;
  return (1 - a) * (1 - b) * values(i, j) + a * (1 - b) * values(i + 1, j) +
         (1 - a) * b * values(i, j + 1) + a * b * values(i + 1, j + 1);
}

PlanarFunction GridFunction::as_function() const {
  return [copy = *this](Complex z) { return copy.interpolate(z); };
}

void write_grid(const std::filesystem::path& path, const GridFunction& grid,
                const std::string& description) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_grid: cannot open " + path.string());
  const std::int64_t header[2] = {grid.spec.nx, grid.spec.ny};
  const double bounds[4] = {grid.spec.x0, grid.spec.x1, grid.spec.y0, grid.spec.y1};
  out.write(reinterpret_cast<const char*>(header), sizeof header);
  out.write(reinterpret_cast<const char*>(bounds), sizeof bounds);
  // Eigen is column-major, so (i, j) storage already runs x fastest.
  out.write(reinterpret_cast<const char*>(grid.values.data()),
            static_cast<std::streamsize>(sizeof(double) * grid.values.size()));
  if (!out) throw std::runtime_error("write_grid: write failed for " + path.string());

  nlohmann::json sidecar{{"nx", grid.spec.nx},
                         {"ny", grid.spec.ny},
                         {"bounds", {grid.spec.x0, grid.spec.x1, grid.spec.y0, grid.spec.y1}},
                         {"layout", "row-major over y, x fastest"},
                         {"dtype", "float64-le"},
                         {"description", description}};
  std::ofstream side(path.string() + ".json");
  if (!side) throw std::runtime_error("write_grid: cannot open sidecar for " + path.string());
  side << sidecar.dump(2) << '\n';
}

GridFunction read_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_grid: cannot open " + path.string());
  std::int64_t header[2];
  double bounds[4];
  in.read(reinterpret_cast<char*>(header), sizeof header);
  in.read(reinterpret_cast<char*>(bounds), sizeof bounds);
  if (!in || header[0] < 2 || header[1] < 2 || header[0] > (1 << 16) || header[1] > (1 << 16))
    throw std::runtime_error("read_grid: bad header in " + path.string());
  GridSpec spec{static_cast<int>(header[0]), static_cast<int>(header[1]),
                bounds[0], bounds[1], bounds[2], bounds[3]};
  GridFunction grid(spec);
  in.read(reinterpret_cast<char*>(grid.values.data()),
          static_cast<std::streamsize>(sizeof(double) * grid.values.size()));
  if (!in) throw std::runtime_error("read_grid: truncated data in " + path.string());
  return grid;
}

void write_grid_csv(const std::filesystem::path& path, const GridFunction& grid) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_grid_csv: cannot open " + path.string());
  out.precision(17);
  out << "x,y,value\n";
  for (int j = 0; j < grid.spec.ny; ++j)
    for (int i = 0; i < grid.spec.nx; ++i) {
      out << grid.spec.x(i) << ',' << grid.spec.y(j) << ',';
      if (std::isnan(grid(i, j)))
        out << "nan";
      else
        out << grid(i, j);
      out << '\n';
    }
}

}  // namespace remezlab
