#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "remezlab/concordance.hpp"
#include "remezlab/potential.hpp"
#include "remezlab/pvalent.hpp"
#include "remezlab/remez.hpp"
#include "remezlab/suites.hpp"

using namespace remezlab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SuiteResult suite(const std::string& name, int trials = 0, int kmax = 0) {
  RunConfig c;
  c.suite = name;
  c.trials = trials;
  c.kmax = kmax;
  return run_suite(c);
}

double max_fitted(const SuiteResult& r, const std::string& family) {
  double m = -std::numeric_limits<double>::infinity();
  for (const BoundReport& b : r.reports)
    if (b.family == family) m = std::max(m, b.fitted);
  return m;
}

Outcome chebyshev_sharp() {
  const auto t0 = std::chrono::steady_clock::now();
  const bool exact = bg_sharp_bound(2, 1, 0.5) == 17.0;
  bool monotone = true;
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= 16; ++k) {
      double prev = std::numeric_limits<double>::infinity();
      for (int i = 1; i <= 1000; ++i) {
        const double v = bg_sharp_bound(k, n, i / 1000.0);
        monotone = monotone && v >= 1.0 && v <= prev * (1 + 1e-14);
        prev = v;
      }
    }
  const double secs = seconds_since(t0);
  return {exact && monotone && secs < 1.0,
          fmt("value %.17g, monotone %d, %.3f s", bg_sharp_bound(2, 1, 0.5), monotone, secs)};
}

Outcome poly_harness() {
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteResult r = suite("remez-poly", 1000);
  const double secs = seconds_since(t0);
  return {r.reports.size() == 1000 && r.violations == 0 && secs < 300.0,
          fmt("%zu trials, %d violations, %.1f s", r.reports.size(), r.violations, secs)};
}

Outcome main_inequality() {
  const SuiteResult r = suite("remez-main", 500);
  const double c = max_fitted(r, "remez-main");
  return {r.reports.size() == 500 && r.violations == 0 && c <= 1.0 + 1e-2,
          fmt("%d violations, fitted c %.4f", r.violations, c)};
}

Outcome near_tightness() {
  Vector zero = Vector::Zero(1);
  const Ball ball(zero, 1.0);
  Vector lo(1), hi(1);
  lo << -1.0;
  hi << 0.0;
  const Box half[] = {{lo, hi}};
  const MeasurableSet omega(ball, half);
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 8; ++k) {
    // T_k(2x + 1), expanded from the Chebyshev coefficients.
    const std::vector<double> t = chebyshev_poly(k).coefficients();
    std::vector<double> c(t.size(), 0.0);
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
      std::vector<double> next(c.size(), 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i] += c[i];
        if (i + 1 < c.size()) next[i + 1] += 2.0 * c[i];
      }
      next[0] += *it;
      c = next;
    }
    const BoundReport r =
        verify_poly_remez(MultiPoly::univariate(c), ball, omega, {BoundForm::ChebyshevSharp});
    const double ratio = r.lhs / r.extra["sup_omega"].get<double>();
    worst = std::min(worst, ratio / bg_sharp_bound(k, 1, 0.5));
  }
  return {worst >= 0.5, fmt("min ratio / bound %.6f", worst)};
}

Outcome capacity_disks() {
  bool ok = true;
  std::string detail;
  for (double rho : {0.2, 0.4, 0.6}) {
    const auto t0 = std::chrono::steady_clock::now();
    RelaxationOptions o;
    o.nodes = 513;
    const Grid2D g = relative_extremal(CompactSet2D::disk(0.0, rho), 1.0, o);
    double node_error = 0.0;
    for (int j = 0; j < g.u.spec.ny; ++j)
      for (int i = 0; i < g.u.spec.nx; ++i)
        if (g.mask(i, j) == NodeKind::Interior)
          node_error = std::max(node_error, std::abs(g.u(i, j) - std::log(std::abs(g.u.spec.node(i, j))) /
                                                                     std::log(1.0 / rho)));
    const double exact = 2.0 * kPi / std::log(1.0 / rho);
    const double a = capacity(g, rho + 0.1);
    const double b = capacity(g, 0.5 * (1.0 + rho));
    const double cap_err = std::abs(b - exact) / exact;
    const double flux = std::abs(a - b) / exact;
    const double secs = seconds_since(t0);
    ok = ok && g.converged && node_error < 1e-2 && cap_err <= 0.02 && flux <= 0.005 && secs < 120.0;
    detail += fmt("rho %.1f: node %.2e cap %.2e flux %.2e %.1f s; ", rho, node_error, cap_err, flux,
                  secs);
  }
  return {ok, detail};
}

Outcome transfinite() {
  const FeketeResult disk = fekete(CompactSet2D::disk(0.0, 1.0), 12, trial_seed(1, 0));
  const FeketeResult seg =
      fekete(CompactSet2D::segment({-0.4, 0.0}, {0.4, 0.0}), 48, trial_seed(1, 1));
  const double e_disk = std::abs(disk.delta - 1.0);
  const double e_seg = std::abs(seg.delta - 0.2) / 0.2;
  return {e_disk <= 0.03 && e_seg <= 0.10,
          fmt("disk delta %.5f (rel %.4f, tol 0.03), segment delta %.5f (rel %.4f, tol 0.10)",
              disk.delta, e_disk, seg.delta, e_seg)};
}

Outcome alexander_taylor() {
  const SuiteResult r = suite("alexander-taylor");
  std::string detail;
  for (const BoundReport& b : r.reports)
    detail += fmt("%s delta %.5f bound %.5f margin %.5f; ",
                  b.extra["case"].get<std::string>().c_str(), b.lhs, b.bound, b.margin);
  return {r.violations == 0 && r.converged, detail};
}

Outcome extremal() {
  const SuiteResult r = suite("extremal");
  double excess = 0.0, growth = 0.0;
  for (const BoundReport& b : r.reports)
    (b.trial == 0 ? excess : growth) = std::max(b.trial == 0 ? excess : growth, b.fitted);
  return {r.violations == 0 && r.reports.size() == 6,
          fmt("max excess %.2e, growth error %.2e", excess, growth)};
}

Outcome valency() {
  const auto t0 = std::chrono::steady_clock::now();
  const ValencyTable t = build_valency_table(10);
  double xval = 0.0;
  bool growth = true;
  for (int l = 1; l <= 10; ++l) {
    for (int i = 1; i < 20; ++i) {
      const double b = i / 20.0;
      const double series = phi_series(l, b);
      xval = std::max(xval, std::abs(t.eval(l, b) / std::pow(1 - b, l + 1) - series) / series);
    }
    if (l <= 9) growth = growth && t.mu[l + 1] <= (2 * l + 1) * t.mu[l];
  }
  const SuiteResult phi = suite("phi-bound");
  const SuiteResult pv = suite("pvalent", 300);
  const double secs = seconds_since(t0);
  const bool ok = xval <= 1e-10 && growth && phi.violations == 0 && pv.violations == 0 &&
                  pv.reports.size() == 300 && secs < 60.0;
  return {ok, fmt("cross-validation %.1e, mu growth %d, phi violations %d, valent violations %d, "
                  "fitted A %.4f, %.1f s",
                  xval, growth, phi.violations, pv.violations, max_fitted(pv, "valent-doubling"), secs)};
}

Outcome mollification() {
  const SuiteResult r = suite("mollify", 50);
  int smv = 0;
  for (const BoundReport& b : r.reports)
    if (b.family == "mollify-extension-smv") ++smv;
  return {r.violations == 0 && r.converged && smv > 0,
          fmt("%zu reports, %d violations, %d extension checks", r.reports.size(), r.violations,
              smv)};
}

Outcome ray_lemma() {
  const SuiteResult r = suite("ray-lemma", 500);
  int planar = 0, spatial = 0;
  for (const BoundReport& b : r.reports) (b.extra["n"].get<int>() == 2 ? planar : spatial)++;
  return {r.violations == 0 && planar == 500 && spatial == 200,
          fmt("%d planar, %d spatial, %d violations, max fitted %.3f", planar, spatial,
              r.violations, max_fitted(r, "ray-lemma"))};
}

Outcome bmo_growth() {
  const SuiteResult r = suite("bmo", 0, 20);
  bool growth = false, invariance = true;
  std::string detail;
  for (const BoundReport& b : r.reports) {
    if (b.family == "bmo-linear-growth") {
      growth = b.pass;
      detail += fmt("max_{k>=4} norm/k %.5f vs 1.25 norm(20)/20 %.5f; ", b.lhs, b.rhs);
    }
    if (b.family == "bmo-invariance") {
      invariance = invariance && b.pass;
      detail += fmt("%s invariance error %.1e; ", b.extra["kind"].get<std::string>().c_str(), b.lhs);
    }
  }
  return {growth && invariance, detail};
}

Outcome determinism() {
  bool same = true;
  std::string detail;
  for (const char* name : {"remez-poly", "l1", "pvalent", "ray-lemma", "fekete", "phi-bound",
                           "extremal", "doubling"}) {
    RunConfig c;
    c.suite = name;
    c.trials = std::string(name) == "fekete" || std::string(name) == "extremal" ? 0 : 40;
    const std::string a = to_jsonl(run_suite(c).reports);
    c.jobs = 2;
    const std::string b = to_jsonl(run_suite(c).reports);
    if (a != b) {
      same = false;
      detail += fmt("%s differs; ", name);
    }
  }
  const ConcordanceCheck cc = check_concordance();
  detail += fmt("concordance errors %zu", cc.errors.size());
  return {same && cc.ok, detail};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"chebyshev sharp bound", chebyshev_sharp},
      {"polynomial remez harness", poly_harness},
      {"main inequality", main_inequality},
      {"near-tightness", near_tightness},
      {"relative extremal and capacity", capacity_disks},
      {"transfinite diameter", transfinite},
      {"alexander-taylor", alexander_taylor},
      {"L-extremal representation", extremal},
      {"valency machinery", valency},
      {"mollification", mollification},
      {"ray lemma", ray_lemma},
      {"bmo linear growth", bmo_growth},
      {"determinism and concordance", determinism},
  };
  int failed = 0;
  int id = 0;
  for (const auto& [name, check] : criteria) {
    ++id;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria pass\n", id - failed, id);
  return failed == 0 ? 0 : 1;
}
