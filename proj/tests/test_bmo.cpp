#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "remezlab/bmo.hpp"

using namespace remezlab;

namespace {

constexpr double kPi = std::numbers::pi;

Point pt(double t) {
  Point p(1);
  p[0] = t;
  return p;
}

Point pt3(double x, double y, double z) {
  Point p(3);
  p << x, y, z;
  return p;
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, a, b);
}

}  // namespace

TEST_CASE("domain measures") {
  CHECK(BmoDomain::interval(-1.0, 2.0).measure() == doctest::Approx(3.0));
  CHECK(BmoDomain::circle().measure() == doctest::Approx(2.0 * kPi));
  CHECK(BmoDomain::sphere().measure() == doctest::Approx(4.0 * kPi));
  CHECK_THROWS(BmoDomain::interval(1.0, 1.0));
}

TEST_CASE("constant functions have zero oscillation") {
  const DomainFunction c = [](const Point&) { return 2.75; };
  CHECK(mean_oscillation(c, BmoDomain::circle(), {pt(0.4), 1.0}) == doctest::Approx(0.0));
  CHECK(mean_oscillation(c, BmoDomain::interval(0, 1), {pt(0.2), 0.1}) == doctest::Approx(0.0));
  CHECK(mean_oscillation(c, BmoDomain::sphere(), {pt3(0, 0, 1), 0.7}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ball_average(c, BmoDomain::sphere(), {pt3(0, 1, 0), 1.3}) ==
        doctest::Approx(2.75).epsilon(1e-9));
  CHECK(bmo_norm(c, BmoDomain::circle(), {8, 3}).norm == doctest::Approx(0.0));
  CHECK_THROWS(mean_oscillation(c, BmoDomain::circle(), {pt(0.4), 0.0}));
}

TEST_CASE("symmetric step has oscillation one") {
  const double c = 0.9;
  const DomainFunction step = [&](const Point& p) { return p[0] > c ? 1.0 : -1.0; };
  CHECK(mean_oscillation(step, BmoDomain::circle(), {pt(c), 0.5}, {c}) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mean_oscillation(step, BmoDomain::interval(0.0, 2.0), {pt(c), 0.3}, {c}) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("log|z - 1| on the whole circle against tanh-sinh") {
  const auto g = [](double t) { return std::log(std::abs(2.0 * std::cos(t / 2.0))); };
  const DomainFunction f = [&](const Point& p) { return g(p[0]); };
  const MetricBall whole{pt(0.0), kPi};
  CHECK(std::abs(ball_average(f, BmoDomain::circle(), whole, {kPi})) < 1e-9);
  // |g| integrated piecewise between the sign changes at +-2 pi / 3.
  const double z = 2.0 * kPi / 3.0;
  const double oracle = (tanh_sinh([&](double t) { return -g(t); }, -kPi, -z) +
                         tanh_sinh([&](double t) { return g(t); }, -z, z) +
                         tanh_sinh([&](double t) { return -g(t); }, z, kPi)) /
                        (2.0 * kPi);
  CHECK(mean_oscillation(f, BmoDomain::circle(), whole, {kPi}) ==
        doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("Chebyshev arcs against tanh-sinh") {
  const int k = 7;
  const DomainFunction f = chebyshev_log_on_circle(k);
  const Singularities zeros = chebyshev_circle_zeros(k);
  CHECK(zeros.size() == static_cast<std::size_t>(2 * k));
  CHECK(f(pt(0.0)) == doctest::Approx(0.0));
  const MetricBall ball{pt(0.3), 0.4};
  // Oracle: split at the zeros inside the arc, integrate log|cos k t|.
  std::vector<double> cuts = {ball.center[0] - ball.radius};
  for (double z : zeros) {
    for (double shift : {-2.0 * kPi, 0.0, 2.0 * kPi})
      if (z + shift > cuts.front() && z + shift < ball.center[0] + ball.radius)
        cuts.push_back(z + shift);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(ball.center[0] + ball.radius);
  auto g = [&](double t) { return std::log(std::abs(std::cos(k * t))); };
  double mean = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) mean += tanh_sinh(g, cuts[i], cuts[i + 1]);
  mean /= 2.0 * ball.radius;
  CHECK(ball_average(f, BmoDomain::circle(), ball, zeros) == doctest::Approx(mean).epsilon(1e-8));
}

TEST_CASE("hemisphere oscillation of the height") {
  const DomainFunction z = [](const Point& p) { return p[2]; };
  const MetricBall north{pt3(0, 0, 1), kPi / 2.0};
  CHECK(ball_average(z, BmoDomain::sphere(), north) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(ball_average([](const Point& p) { return p[2] * p[2]; }, BmoDomain::sphere(), north) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  // |z - 1/2| has a kink, so the fixed cap rule only reaches about 1e-5 here.
  CHECK(std::abs(mean_oscillation(z, BmoDomain::sphere(), north) - 0.25) < 1e-4);
  const MetricBall cap{pt3(0, 0, 1), 0.6};
  CHECK(ball_average(z, BmoDomain::sphere(), cap) ==
        doctest::Approx((1.0 + std::cos(0.6)) / 2.0).epsilon(1e-9));
}

TEST_CASE("shift and scale invariances") {
  const DomainFunction f = chebyshev_log_on_circle(5);
  const Singularities zeros = chebyshev_circle_zeros(5);
  const BmoDomain circle = BmoDomain::circle();
  const MetricBall ball{pt(1.1), 0.8};
  const double base = mean_oscillation(f, circle, ball, zeros);
  const double shifted =
      mean_oscillation([&](const Point& p) { return f(p) + 4.0; }, circle, ball, zeros);
  CHECK(std::abs(shifted - base) < 1e-12);

  const BallFamily family{16, 4};
  const double norm = bmo_norm(f, circle, family, zeros).norm;
  const double scaled =
      bmo_norm([&](const Point& p) { return std::log(3.0) + f(p); }, circle, family, zeros).norm;
  CHECK(std::abs(scaled - norm) < 1e-9);
  const double doubled =
      bmo_norm([&](const Point& p) { return 2.0 * f(p); }, circle, family, zeros).norm;
  CHECK(std::abs(doubled - 2.0 * norm) < 1e-9);
}

TEST_CASE("norm dominates the family and grows with it") {
  const DomainFunction f = chebyshev_log_on_circle(3);
  const Singularities zeros = chebyshev_circle_zeros(3);
  const BmoReport small = bmo_norm(f, BmoDomain::circle(), {16, 3}, zeros);
  const BmoReport large = bmo_norm(f, BmoDomain::circle(), {16, 6}, zeros);
  CHECK(small.oscillations.size() == 48);
  for (double o : small.oscillations) CHECK(o <= small.norm);
  CHECK(large.norm >= small.norm);
  CHECK(ball_family(BmoDomain::circle(), {16, 3}).size() == 48);
  CHECK(ball_family(BmoDomain::sphere(), {10, 2}).size() == 20);
}

TEST_CASE("Chebyshev BMO norms stay bounded") {
  std::vector<double> norms;
  for (int k = 1; k <= 8; ++k)
    norms.push_back(
        bmo_norm(chebyshev_log_on_circle(k), BmoDomain::circle(), {16, 5}, chebyshev_circle_zeros(k))
            .norm);
  for (std::size_t i = 3; i < norms.size(); ++i) CHECK(norms[i] / (i + 1) <= 2.0 * norms[0]);
}

TEST_CASE("sup norm") {
  CHECK(sup_norm([](const Point& p) { return std::sin(3 * p[0]); }, BmoDomain::circle()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sup_norm([](const Point& p) { return p[0] * (1 - p[0]); }, BmoDomain::interval(0, 1)) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(sup_norm([](const Point& p) { return p[0] + p[2]; }, BmoDomain::sphere()) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("log integrability") {
  const BmoDomain unit = BmoDomain::interval(0.0, 1.0);
  CHECK(log_integrability([](const Point& p) { return p[0]; }, unit, {0.0}) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(log_integrability([](const Point& p) { return std::cos(p[0]) > 0 ? 2.0 : -2.0; },
                          BmoDomain::circle()) == doctest::Approx(0.0));
  CHECK_THROWS(log_integrability([](const Point&) { return 0.0; }, unit));

  const BmoDomain sym = BmoDomain::interval(-1.0, 1.0);
  const auto base = [](const Point& p) { return cheb(3, p[0]); };
  Singularities zeros;
  for (int j = 0; j < 3; ++j) zeros.push_back(std::cos((2 * j + 1) * kPi / 6.0));
  const double v1 = log_integrability(base, sym, zeros);
  for (double s : {0.5, 2.0, 3.0}) {
    const double vs = log_integrability(
        [&](const Point& p) { return std::pow(std::abs(base(p)), s); }, sym, zeros);
    CHECK(std::abs(vs - s * v1) < 1e-9);
  }

  double first = 0.0;
  for (int k = 1; k <= 12; ++k) {
    Singularities z;
    for (int j = 0; j < k; ++j) z.push_back(std::cos((2 * j + 1) * kPi / (2.0 * k)));
    const double v =
        log_integrability([k](const Point& p) { return cheb(k, p[0]); }, sym, z);
    if (k == 1) first = v;
    CHECK(v <= 2.0 * k * first);
  }
}
