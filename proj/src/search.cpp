#include "remezlab/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace remezlab {

int dimension(const Region& region) {
  return std::visit([](const auto& r) { return r.dimension(); }, region);
}

CVector to_complex(const Vector& xy) {
  const Eigen::Index n = xy.size() / 2;
  CVector z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = {xy[i], xy[n + i]};
  return z;
}

Vector to_real(const CVector& z) {
  const Eigen::Index n = z.size();
  Vector xy(2 * n);
  xy.head(n) = z.real();
  xy.tail(n) = z.imag();
  return xy;
}

namespace {

struct Node {
  Vector x;
  double value;
  int box;      // -1 for a ball region
  Vector step;  // per-coordinate lattice spacing at the coarse level
};

// Enumerate the tensor lattice lo + step * index over counts[d] nodes per axis.
template <class Visit>
void for_each_lattice_node(const Vector& lo, const Vector& step, const Eigen::VectorXi& counts,
                           Visit&& visit) {
  const int d = static_cast<int>(lo.size());
  Eigen::VectorXi idx = Eigen::VectorXi::Zero(d);
  for (;;) {
    visit(Vector(lo + step.cwiseProduct(idx.cast<double>())));
    int axis = 0;
    while (axis < d && ++idx[axis] == counts[axis]) idx[axis++] = 0;
    if (axis == d) break;
  }
}

std::vector<Node> coarse_nodes(const std::function<double(const Vector&)>& f,
                               const Ball& ball, int budget) {
  const int d = ball.dimension();
  const int m = std::max(3, static_cast<int>(std::floor(std::pow(budget, 1.0 / d) + 1e-9)));
  const double h = 2.0 * ball.radius / (m - 1);
  const Vector lo = ball.center.array() - ball.radius;
  const Vector step = Vector::Constant(d, h);
  std::vector<Node> nodes;
  for_each_lattice_node(lo, step, Eigen::VectorXi::Constant(d, m), [&](const Vector& x) {
    const Vector y = ball.clamp(x);
    nodes.push_back({y, f(y), -1, step});
  });
  return nodes;
}

std::vector<Node> coarse_nodes(const std::function<double(const Vector&)>& f,
                               const MeasurableSet& set, int budget) {
  const int d = set.dimension();
  const double total = set.measure();
  std::vector<Node> nodes;
  for (std::size_t b = 0; b < set.boxes().size(); ++b) {
    const Box& box = set.boxes()[b];
    const Vector side = box.hi - box.lo;
    const double share = std::max(1.0, budget * box.volume() / total);
    const double density = std::pow(share / box.volume(), 1.0 / d);
    Eigen::VectorXi counts(d);
    for (int k = 0; k < d; ++k)
      counts[k] = std::clamp(static_cast<int>(std::lround(side[k] * density)) + 1, 2, budget);
    // Keep thin boxes from blowing the budget.
    while (counts.cast<double>().prod() > 4.0 * budget + 16) {
      Eigen::Index widest;
      counts.maxCoeff(&widest);
      counts[widest] = std::max(2, counts[widest] / 2);
    }
    Vector step(d);
    for (int k = 0; k < d; ++k) step[k] = side[k] / (counts[k] - 1);
    for_each_lattice_node(box.lo, step, counts, [&](const Vector& x) {
      nodes.push_back({x, f(x), static_cast<int>(b), step});
    });
  }
  return nodes;
}

Vector project(const Region& region, int box, const Vector& x) {
  if (const auto* ball = std::get_if<Ball>(&region)) return ball->clamp(x);
  return std::get<MeasurableSet>(region).boxes()[static_cast<std::size_t>(box)].clamp(x);
}

// Offsets of the refinement stencil in units of the step: the full
// {-1, 0, 1}^d cube for d <= 4, the 2d axis moves otherwise.
std::vector<Vector> stencil_offsets(int d) {
  std::vector<Vector> out;
  if (d <= 4) {
    for_each_lattice_node(Vector::Constant(d, -1.0), Vector::Ones(d),
                          Eigen::VectorXi::Constant(d, 3), [&](const Vector& o) {
                            if (!o.isZero()) out.push_back(o);
                          });
  } else {
    for (int k = 0; k < d; ++k) {
      out.push_back(Vector::Unit(d, k));
      out.push_back(-Vector::Unit(d, k));
    }
  }
  return out;
}

}  // namespace

SupEstimate maximize(const std::function<double(const Vector&)>& f, const Region& region,
                     int levels, const SearchOptions& options) {
  if (levels < 1) throw std::invalid_argument("maximize: levels must be >= 1");
  const int d = dimension(region);
  std::vector<Node> nodes = std::visit(
      [&](const auto& r) { return coarse_nodes(f, r, options.coarse_points); }, region);
  if (nodes.empty()) throw std::invalid_argument("maximize: empty region");

  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return nodes[a].value > nodes[b].value; });

  const auto offsets = stencil_offsets(d);
  std::optional<Node> best;
  Vector best_step;
  for (std::size_t s = 0; s < order.size() && s < static_cast<std::size_t>(options.starts); ++s) {
    Node cur = nodes[order[s]];
    Vector step = cur.step;
    for (int level = 0; level < levels; ++level) {
      step *= 0.5;
      for (int move = 0; move < options.moves_per_level; ++move) {
        Node cand = cur;
        for (const Vector& o : offsets) {
          const Vector y = project(region, cur.box, cur.x + step.cwiseProduct(o));
          const double v = f(y);
          if (v > cand.value) cand = Node{y, v, cur.box, cur.step};
        }
        if (!(cand.value > cur.value)) break;
        cur = std::move(cand);
      }
    }
    if (!best || cur.value > best->value) {
      best = std::move(cur);
      best_step = step;
    }
  }

  SupEstimate est{best->value, best->x, levels, 0.0};
  double slope = 0.0;
  for (const Vector& o : offsets) {
    const Vector y = project(region, best->box, best->x + best_step.cwiseProduct(o));
    const double dist = (y - best->x).norm();
    if (dist > 0.0) slope = std::max(slope, std::abs(f(y) - best->value) / dist);
  }
  est.gap = slope * best_step.norm();
  return est;
}

SupEstimate sup_on_region(const MultiPoly& p, const Region& region, int levels,
                          const SearchOptions& options) {
  if (dimension(region) != p.dimension())
    throw std::invalid_argument("sup_on_region: dimension mismatch");
  return maximize([&](const Vector& x) { return std::abs(p(x)); }, region, levels, options);
}

SupEstimate sup_on_complex_ball(const MultiPoly& p, const CVector& center, double radius,
                                int levels, const SearchOptions& options) {
  if (center.size() != p.dimension())
    throw std::invalid_argument("sup_on_complex_ball: dimension mismatch");
  const Region ball = Ball(to_real(center), radius);
  return maximize([&](const Vector& xy) { return std::abs(p(to_complex(xy))); }, ball, levels,
                  options);
}

}  // namespace remezlab
