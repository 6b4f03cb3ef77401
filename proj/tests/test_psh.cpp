#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "remezlab/psh.hpp"

using namespace remezlab;

namespace {

constexpr double kPi = std::numbers::pi;

CVector cz(Complex z) {
  CVector v(1);
  v[0] = z;
  return v;
}

// Second radial moment of the planar bump by tanh-sinh in the radius.
double bump_second_moment() {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto w = [](double s) { return s < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0; };
  const double mass = ts.integrate([&](double s) { return w(s) * s; }, 0.0, 1.0);
  const double second = ts.integrate([&](double s) { return w(s) * s * s * s; }, 0.0, 1.0);
  return second / mass;
}

}  // namespace

TEST_CASE("constant generator gives the zero function") {
  const PshSample f = make_fr_sample(MultiPoly::constant(2, 3.5), 2.0);
  CVector z(2);
  z << Complex(0.3, 0.1), Complex(-0.2, 0.4);
  CHECK(f(z) == 0.0);
  CHECK_THROWS(make_fr_sample(MultiPoly(1, {{{1}, 0.0}}), 2.0));
  CHECK_THROWS(make_fr_sample(MultiPoly::variable(1, 0), 1.0));
}

TEST_CASE("p = z, r = 2") {
  const PshSample f = make_fr_sample(MultiPoly::variable(1, 0), 2.0);
  CHECK(f.normalizer == doctest::Approx(std::log(2.0)).epsilon(1e-8));
  CHECK(f(cz(1.0)) == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(f(cz(Complex(0.0, 0.5))) ==
        doctest::Approx((std::log(0.5) - std::log(2.0)) / std::log(2.0)).epsilon(1e-7));
  CHECK(f.class_ok);
  CHECK(f(cz(0.0)) == kLogFloor);
}

TEST_CASE("Chebyshev samples belong to the class") {
  for (int k = 1; k <= 8; ++k) {
    const PshSample f = make_fr_sample(chebyshev_poly(k), 2.0);
    CHECK(f.class_ok);
    CHECK(f.unit_sup >= -1.0 - f.tau);
    CHECK(f.unit_sup <= 0.0);
  }
}

TEST_CASE("random samples stay below zero on the outer ball") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const MultiPoly p = random_poly(2, 1 + static_cast<int>(s % 5), s);
    if (p.degree() == 0) continue;
    const PshSample f = make_fr_sample(p, 2.0);
    CHECK(f.class_ok);
    std::mt19937_64 rng(s);
    std::normal_distribution<double> g;
    for (int i = 0; i < 200; ++i) {
      Vector xy(4);
      for (int j = 0; j < 4; ++j) xy[j] = g(rng);
      xy *= 2.0 / xy.norm() * std::pow(std::uniform_real_distribution<double>()(rng), 0.25);
      CHECK(f(to_complex(xy)) <= f.normalizer_gap / f.scale() + 1e-12);
    }
  }
}

TEST_CASE("mollifier kernel is normalized and supported in the unit ball") {
  for (int d : {1, 2, 3, 4}) {
    const MollifierKernel k = MollifierKernel::bump(d);
    CHECK(k.radial_moment(0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(k.profile(1.0) == 0.0);
    CHECK(k.profile(1.5) == 0.0);
    CHECK(k.profile(0.5) > 0.0);
  }
  CHECK(MollifierKernel::bump(2).radial_moment(2) ==
        doctest::Approx(bump_second_moment()).epsilon(1e-8));
}

TEST_CASE("mollifying a constant") {
  const GridSpec nodes = GridSpec::square(1.0, 9);
  const GridFunction out = mollify([](Complex) { return -2.5; }, nodes, 2.0, 0.3);
  for (int j = 0; j < nodes.ny; ++j)
    for (int i = 0; i < nodes.nx; ++i) CHECK(std::abs(out(i, j) + 2.5) < 1e-8);
}

TEST_CASE("mollifying |z|^2 adds eps^2 times the second moment") {
  const double m2 = bump_second_moment();
  const GridSpec nodes = GridSpec::square(0.8, 7);
  for (double eps : {0.1, 0.3}) {
    const GridFunction out = mollify([](Complex z) { return std::norm(z); }, nodes, 2.0, eps);
    for (int j = 0; j < nodes.ny; ++j)
      for (int i = 0; i < nodes.nx; ++i)
        CHECK(std::abs(out(i, j) - (std::norm(nodes.node(i, j)) + eps * eps * m2)) < 1e-6);
  }
}

TEST_CASE("mollified log|z| on an annulus decreases in eps and stays above f") {
  const PlanarFunction f = [](Complex z) { return std::log(std::abs(z)); };
  GridSpec nodes;
  nodes.nx = 9;
  nodes.ny = 9;
  nodes.x0 = 0.6;
  nodes.x1 = 1.4;
  nodes.y0 = -0.4;
  nodes.y1 = 0.4;
  const GridFunction e1 = mollify(f, nodes, 3.0, 0.3);
  const GridFunction e2 = mollify(f, nodes, 3.0, 0.15);
  for (int j = 0; j < nodes.ny; ++j)
    for (int i = 0; i < nodes.nx; ++i) {
      const double v = f(nodes.node(i, j));
      CHECK(e1(i, j) >= e2(i, j) - 1e-9);
      CHECK(e2(i, j) >= v - 1e-9);
    }
}

TEST_CASE("mollify domain and grid preconditions") {
  const GridSpec nodes = GridSpec::square(1.0, 11);
  const GridFunction out = mollify([](Complex) { return 1.0; }, nodes, 1.2, 0.4);
  CHECK(std::isnan(out(0, 0)));
  CHECK(out(5, 5) == doctest::Approx(1.0));
  CHECK_THROWS(mollify([](Complex) { return 1.0; }, nodes, 1.2, 1.5));
  const GridFunction coarse = GridFunction::sample(nodes, [](Complex z) { return std::norm(z); });
  CHECK_THROWS_AS(mollify(coarse, 0.2), std::invalid_argument);
  const GridFunction fine =
      GridFunction::sample(GridSpec::square(1.0, 41), [](Complex z) { return std::norm(z); });
  const GridFunction smooth = mollify(fine, 0.2);
  CHECK(smooth(20, 20) == doctest::Approx(0.04 * bump_second_moment()).epsilon(1e-3));
}

TEST_CASE("extension parameters") {
  const ExtensionParams p = ExtensionParams::make(0.5, 0.7, -0.3);
  CHECK(p.c_f() > 0.0);
  CHECK(p.c_f() == doctest::Approx(std::log(4 * 0.7 / 3.5) / (2 * -0.3)));
  CHECK_THROWS(ExtensionParams::make(0.5, 0.9, -0.3));
  CHECK_THROWS(ExtensionParams::make(0.5, 0.7, 0.1));
  CHECK_THROWS(ExtensionParams::make(1.5, 0.7, -0.3));
}

TEST_CASE("extension of a constant") {
  const double level = -0.4;
  const ExtensionParams p = ExtensionParams::make(0.5, 0.7, level);
  const SubharmonicExtension h([&](Complex) { return level; }, p);
  // Continuity across |z| = r_f and the zero crossing at (3 + r) / 4.
  CHECK(h(0.7 - 1e-12) == doctest::Approx(h(0.7 + 1e-12)));
  CHECK(h.log_term(Complex(0.0, (3.0 + 0.5) / 4.0)) == doctest::Approx(0.0));
  for (double rho = 0.71; rho < 1.0; rho += 0.02)
    CHECK(h(rho) == doctest::Approx(std::max(level, h.log_term(rho))));
  CHECK(h.log_term(0.7) < level);
  CHECK(h.log_term(1.0) > 0.0);
}

TEST_CASE("extension agrees with f on the inner disk and has log growth") {
  const MultiPoly p = MultiPoly::univariate({0.3, -1.0, 0.0, 0.7});
  const PshSample s = make_fr_sample(p, 2.0);
  const PlanarFunction f = s.planar();
  const ExtensionParams params = choose_extension_params(f, 0.5);
  CHECK(params.r_f >= (1 + 3 * 0.5) / 4 - 1e-12);
  CHECK(params.r_f <= (1 + 0.5) / 2 + 1e-12);
  const GridSpec out = GridSpec::square(3.0, 61);
  const GridFunction h = extend_subharmonic(f, params, out, 3.0);
  for (int j = 0; j < out.ny; ++j)
    for (int i = 0; i < out.nx; ++i) {
      const Complex z = out.node(i, j);
      if (std::abs(z) < params.r_f) CHECK(h(i, j) == f(z));
    }
  CHECK(std::isfinite(growth_constant(h, params.c_f())));
  CHECK_THROWS(SubharmonicExtension(f, ExtensionParams::make(0.5, params.r_f, params.level / 2)));
}

TEST_CASE("choose_extension_params rejects nonnegative functions") {
  CHECK_THROWS_AS(choose_extension_params([](Complex) { return 0.5; }, 0.5),
                  std::runtime_error);
}

TEST_CASE("sub-mean-value test") {
  const GridSpec nodes = GridSpec::square(1.0, 21);
  const Complex z0(0.13, 0.37);
  const auto harmonic = submeanvalue_test(
      [&](Complex z) { return floored_log(std::abs(z - z0)); }, nodes, 2.0, 0.05);
  CHECK(harmonic.ok());
  CHECK(harmonic.tested > 0);

  const auto super = submeanvalue_test([](Complex z) { return -std::norm(z); }, nodes, 2.0, 0.05);
  CHECK(static_cast<int>(super.violations.size()) == super.tested);

  const auto maxed = submeanvalue_test(
      [](Complex z) { return std::max(z.real(), 0.5 * z.imag() - 0.1); }, nodes, 2.0, 0.05);
  CHECK(maxed.ok());

  const GridFunction g = GridFunction::sample(GridSpec::square(1.0, 161),
                                              [](Complex z) { return std::norm(z); });
  CHECK(submeanvalue_test(g, 0.1).ok());
  CHECK_THROWS(submeanvalue_test(GridFunction::sample(nodes, [](Complex) { return 0.0; }), 0.1));
}

TEST_CASE("extension outputs pass the sub-mean-value test") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const MultiPoly p = random_poly(1, 2 + static_cast<int>(seed), seed);
    if (p.degree() == 0) continue;
    const PlanarFunction f = make_fr_sample(p, 2.0).planar();
    const SubharmonicExtension h(f, choose_extension_params(f, 0.5));
    const auto report = submeanvalue_test([&](Complex z) { return h(z); },
                                          GridSpec::square(1.5, 31), 10.0, 0.1);
    CHECK(report.ok());
  }
}

TEST_CASE("floored logarithm") {
  CHECK(floored_log(0.0) == kLogFloor);
  CHECK(is_floored(floored_log(0.0)));
  CHECK_FALSE(is_floored(floored_log(1e-300)));
  CHECK(floored_log(kPi) == doctest::Approx(std::log(kPi)));
}
