#include <doctest.h>

#include <cmath>
#include <random>

#include "remezlab/remez.hpp"

using namespace remezlab;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

MeasurableSet interval(const Ball& ambient, double lo, double hi) {
  const Box b[] = {{vec({lo}), vec({hi})}};
  return MeasurableSet(ambient, b);
}

// T_k(2x + 1): equioscillates on [-1, 0].
MultiPoly translated_chebyshev(int k) {
  const std::vector<double> t = chebyshev_poly(k).coefficients();
  std::vector<double> out(t.size(), 0.0);
  // Expand sum t_j (2x + 1)^j by repeated Horner steps.
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    std::vector<double> next(out.size(), 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i] += out[i];
      if (i + 1 < out.size()) next[i + 1] += 2.0 * out[i];
    }
    next[0] += *it;
    out = next;
  }
  return MultiPoly::univariate(out);
}

}  // namespace

TEST_CASE("bound form names") {
  for (BoundForm f : {BoundForm::MainPsh, BoundForm::SimplePoly, BoundForm::ChebyshevSharp,
                      BoundForm::Doubling, BoundForm::L1Mean})
    CHECK(parse_bound_form(to_string(f)) == f);
  CHECK_THROWS(parse_bound_form("nope"));
}

TEST_CASE("sharp bound values") {
  for (int k = 0; k <= 6; ++k)
    for (int n = 1; n <= 3; ++n) CHECK(bg_sharp_bound(k, n, 1.0) == doctest::Approx(1.0));
  CHECK(bg_sharp_bound(1, 1, 0.5) == doctest::Approx(3.0));
  CHECK(bg_sharp_bound(2, 1, 0.5) == 17.0);
  CHECK_THROWS(bg_sharp_bound(2, 1, 0.0));
  CHECK_THROWS(bg_sharp_bound(2, 1, -0.1));
}

TEST_CASE("sharp bound at n = 1 is the classical Remez value") {
  for (int k = 0; k <= 12; ++k)
    for (double lambda = 0.05; lambda < 1.0; lambda += 0.05) {
      const double beta = 1.0 - lambda;
      const double x = (1.0 + beta) / (1.0 - beta);
      const double direct = std::cosh(k * std::acosh(x));
      CHECK(bg_sharp_bound(k, 1, lambda) == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("sharp bound monotonicity") {
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= 16; ++k) {
      double prev = std::numeric_limits<double>::infinity();
      for (int i = 1; i <= 100; ++i) {
        const double v = bg_sharp_bound(k, n, i / 100.0);
        CHECK(v >= 1.0);
        CHECK(v <= prev * (1 + 1e-14));
        if (k > 0) CHECK(v >= bg_sharp_bound(k - 1, n, i / 100.0) * (1 - 1e-14));
        prev = v;
      }
    }
}

TEST_CASE("simple bound values and monotonicity") {
  CHECK(simple_bound(0, 3, 5.0) == 1.0);
  CHECK(simple_bound(3, 1, 1.0) == 64.0);
  CHECK(simple_bound(2, 2, 2.0) == 256.0);
  CHECK_THROWS(simple_bound(2, 2, 0.5));
  for (int k = 1; k <= 8; ++k)
    for (double ratio = 1.0; ratio < 20.0; ratio += 0.5) {
      CHECK(simple_bound(k, 2, ratio + 0.5) >= simple_bound(k, 2, ratio));
      CHECK(simple_bound(k, 2, ratio) >= simple_bound(k - 1, 2, ratio));
    }
}

TEST_CASE("verify_poly_remez with omega = B") {
  const Ball b(Vector::Zero(1), 1.0);
  const MeasurableSet whole = interval(b, -1.0, 1.0);
  for (int k = 1; k <= 6; ++k) {
    const BoundReport r =
        verify_poly_remez(chebyshev_poly(k), b, whole, {BoundForm::ChebyshevSharp});
    CHECK(r.pass);
    CHECK(r.bound == doctest::Approx(1.0));
    CHECK(std::abs(r.margin) <= 1e-9 + r.gap_lhs + r.gap_rhs);
  }
}

TEST_CASE("translated Chebyshev is near-extremal on [-1, 0]") {
  const Ball b(Vector::Zero(1), 1.0);
  const MeasurableSet half = interval(b, -1.0, 0.0);
  for (int k = 1; k <= 8; ++k) {
    const MultiPoly p = translated_chebyshev(k);
    CHECK(eval(p, vec({1.0})) == doctest::Approx(cheb(k, 3.0)));
    const BoundReport r = verify_poly_remez(p, b, half, {BoundForm::ChebyshevSharp});
    CHECK(r.pass);
    CHECK(r.fitted >= 0.5);
    CHECK(r.fitted == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("random polynomial trials respect both bounds") {
  std::mt19937_64 rng(2024);
  const BoundParams forms[] = {{BoundForm::ChebyshevSharp}, {BoundForm::SimplePoly}};
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + t % 3;
    const int k = 1 + t % 8;
    const Ball ball(Vector::Zero(n), 1.0 + 0.1 * (t % 5));
    const MeasurableSet omega = random_box_union(ball, 1 + t % 4, 0.05, rng);
    const MultiPoly p = random_poly(n, k, rng());
    for (const BoundReport& r : verify_poly_remez(p, ball, omega, forms)) {
      CHECK(r.pass);
      CHECK(r.lhs <= r.rhs * 1.01 + r.gap_lhs + r.gap_rhs);
    }
  }
}

TEST_CASE("simple form fitted constant reproduces the bound") {
  const Ball b(Vector::Zero(1), 1.0);
  const MeasurableSet half = interval(b, -1.0, 0.0);
  const MultiPoly p = translated_chebyshev(3);
  const BoundReport r = verify_poly_remez(p, b, half, {BoundForm::SimplePoly, 1.0, 0.0});
  // (8)^(3 c) = T_3(3) = 99.
  CHECK(r.fitted == doctest::Approx(std::log(99.0) / (3.0 * std::log(8.0))).epsilon(1e-6));
  CHECK(r.bound == doctest::Approx(512.0));
}

TEST_CASE("main inequality with omega = B") {
  const PshSample f = make_fr_sample(random_poly(2, 3, 8), 2.0);
  const Ball b(vec({0.1, 0.1}), 0.3);
  const Box whole_box[] = {{vec({-0.1, -0.1}), vec({0.3, 0.3})}};
  const MeasurableSet inner(b, whole_box);
  const BoundReport r = verify_main_inequality(f, b, inner, {BoundForm::MainPsh, 1.0, 1.0});
  CHECK(r.pass);
}

TEST_CASE("main inequality for p = x1 on a half ball") {
  const MultiPoly p = MultiPoly::variable(2, 0);
  const PshSample f = make_fr_sample(p, 2.0);
  const Ball b(vec({0.2, 0.0}), 0.35);
  const Box half[] = {{vec({-0.05, -0.2}), vec({0.2, 0.2})}};
  const MeasurableSet omega(b, half);
  const BoundReport r = verify_main_inequality(f, b, omega, {BoundForm::MainPsh, 1.0, 0.0});
  CHECK(r.pass);
  const BoundReport poly = verify_poly_remez(p, b, omega, {BoundForm::SimplePoly, 1.0, 0.0});
  const double gap = std::log(poly.lhs / poly.extra["sup_omega"].get<double>()) / std::log(2.0);
  CHECK(r.lhs - r.extra["sup_omega"].get<double>() == doctest::Approx(gap).epsilon(1e-6));
  CHECK(r.fitted <= 1.0 + 1e-2);
}

TEST_CASE("main inequality rejects balls leaving the dilation domain") {
  const PshSample f = make_fr_sample(MultiPoly::variable(1, 0), 2.0);
  const Ball b(vec({0.5}), 0.3);
  CHECK_THROWS(verify_main_inequality(f, b, interval(b, 0.3, 0.6), {BoundForm::MainPsh}, 2.0));
}

TEST_CASE("doubling for p = z1") {
  const PshSample f = make_fr_sample(MultiPoly::variable(1, 0), 2.0);
  CVector x = CVector::Zero(1);
  const BoundReport r = verify_doubling(f, x, 0.4, 1.7, 2.0, 1.0 / std::log(2.0));
  CHECK(r.pass);
  CHECK(r.fitted == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-5));

  const BoundReport same = verify_doubling(f, x, 0.4, 1.0, 2.0, 1.0);
  CHECK(same.pass);
  CHECK(same.lhs == doctest::Approx(same.rhs));
  CHECK(same.fitted == 0.0);

  CHECK_THROWS(verify_doubling(f, x, 0.4, 2.5, 2.0, 1.0));
  CHECK_THROWS(verify_doubling(f, x, 0.4, 0.5, 2.0, 1.0));
}

TEST_CASE("doubling minimal constant is stable under refinement") {
  const PshSample f = make_fr_sample(random_poly(2, 4, 17), 2.0);
  CVector x(2);
  x << Complex(0.1, 0.05), Complex(-0.1, 0.0);
  Tolerances coarse;
  coarse.levels = 15;
  Tolerances fine;
  fine.levels = 30;
  const double c1 = verify_doubling(f, x, 0.3, 1.6, 2.0, 2.0, coarse).fitted;
  const double c2 = verify_doubling(f, x, 0.3, 1.6, 2.0, 2.0, fine).fitted;
  CHECK(std::isfinite(c1));
  CHECK(std::abs(c1 - c2) <= 0.05 * std::abs(c2));
}

TEST_CASE("mean of |p| on omega") {
  const Ball b(Vector::Zero(1), 1.0);
  CHECK(mean_abs_on(MultiPoly::variable(1, 0), interval(b, -1.0, 1.0)) ==
        doctest::Approx(0.5).epsilon(1e-6));
  std::mt19937_64 rng(3);
  const MeasurableSet boxes = random_box_union(Ball(Vector::Zero(2), 1.0), 3, 0.1, rng);
  CHECK(mean_abs_on(MultiPoly::constant(2, -3.0), boxes) == doctest::Approx(3.0));
}

TEST_CASE("L1 Remez bound") {
  const Ball b(Vector::Zero(1), 1.0);
  const BoundReport c = verify_l1_remez(MultiPoly::constant(1, 2.0), b, interval(b, -0.5, 0.2));
  CHECK(c.pass);
  CHECK(c.lhs == doctest::Approx(2.0));
  CHECK(c.bound >= 1.0);

  const BoundReport x = verify_l1_remez(MultiPoly::variable(1, 0), b, interval(b, -1.0, 1.0));
  CHECK(x.pass);
  CHECK(x.lhs == doctest::Approx(1.0));
  CHECK(x.rhs == doctest::Approx(2.0 * 4.0 * 0.5).epsilon(1e-6));

  std::mt19937_64 rng(6);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + t % 2;
    const Ball ball(Vector::Zero(n), 1.0);
    const BoundReport r = verify_l1_remez(random_poly(n, 1 + t % 6, rng()), ball,
                                          random_box_union(ball, 3, 0.05, rng));
    CHECK(r.pass);
  }
}
