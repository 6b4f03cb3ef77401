#include "remezlab/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <boost/version.hpp>

#include "remezlab/bmo.hpp"
#include "remezlab/geometry.hpp"
#include "remezlab/potential.hpp"
#include "remezlab/psh.hpp"
#include "remezlab/pvalent.hpp"
#include "remezlab/remez.hpp"

namespace remezlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr const char* kVersion = "0.1.0";

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct SuiteDefaults {
  int n = 1;
  int kmax = 1;
  int trials = 1;
};

const std::map<std::string, SuiteDefaults>& defaults_table() {
  static const std::map<std::string, SuiteDefaults> table = {
      {"remez-poly", {3, 8, 1000}},   {"remez-main", {3, 8, 500}},
      {"doubling", {2, 6, 200}},      {"l1", {2, 6, 500}},
      {"capacity", {2, 1, 3}},        {"fekete", {2, 1, 3}},
      {"alexander-taylor", {2, 1, 3}}, {"extremal", {1, 16, 20}},
      {"pvalent", {1, 6, 300}},       {"phi-bound", {1, 6, 1}},
      {"bmo", {1, 20, 1}},            {"mollify", {1, 4, 50}},
      {"ray-lemma", {2, 1, 500}},
  };
  return table;
}

}  // namespace

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = {{"suite", c.suite}, {"n", c.n},         {"kmax", c.kmax},       {"trials", c.trials},
       {"seed", c.seed},   {"grid", c.grid},   {"jobs", c.jobs},       {"tau_v", c.tau_v},
       {"tau_at", c.tau_at}, {"tau_smv", c.tau_smv}, {"a", c.a},       {"r", c.r},
       {"out", c.out.string()}};
}

namespace {

using boost::property_tree::ptree;

void apply_section(const ptree& s, RunConfig& c) {
  if (auto v = s.get_optional<std::string>("suite")) c.suite = *v;
  if (auto v = s.get_optional<int>("n")) c.n = *v;
  if (auto v = s.get_optional<int>("kmax")) c.kmax = *v;
  if (auto v = s.get_optional<int>("trials")) c.trials = *v;
  if (auto v = s.get_optional<std::uint64_t>("seed")) c.seed = *v;
  if (auto v = s.get_optional<int>("grid")) c.grid = *v;
  if (auto v = s.get_optional<int>("jobs")) c.jobs = *v;
  if (auto v = s.get_optional<double>("tau_v")) c.tau_v = *v;
  if (auto v = s.get_optional<double>("tau_at")) c.tau_at = *v;
  if (auto v = s.get_optional<double>("tau_smv")) c.tau_smv = *v;
  if (auto v = s.get_optional<double>("a")) c.a = *v;
  if (auto v = s.get_optional<double>("r")) c.r = *v;
  if (auto v = s.get_optional<std::string>("out")) c.out = *v;
}

void validate(const RunConfig& c) {
  if (!(c.tau_v > 0.0 && c.tau_at > 0.0 && c.tau_smv > 0.0))
    throw std::invalid_argument("config: tolerances must be positive");
  if (c.n < 0 || c.kmax < 0 || c.trials < 0) throw std::invalid_argument("config: negative size");
  if (c.grid < 9) throw std::invalid_argument("config: grid must have at least 9 nodes");
  if (c.jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
  if (!(c.a > 1.0)) throw std::invalid_argument("config: a must exceed 1");
  if (!(c.r > 1.0)) throw std::invalid_argument("config: r must exceed 1");
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
  ptree tree;
  boost::property_tree::read_ini(path.string(), tree);
  RunConfig c;
  if (auto run = tree.get_child_optional("run")) apply_section(*run, c);
  if (!c.suite.empty())
    if (auto own = tree.get_child_optional(c.suite)) apply_section(*own, c);
  validate(c);
  return c;
}

std::string config_to_ini(const RunConfig& c) {
  std::ostringstream os;
  os << "[run]\n"
     << "suite=" << c.suite << "\n"
     << "n=" << c.n << "\n"
     << "kmax=" << c.kmax << "\n"
     << "trials=" << c.trials << "\n"
     << "seed=" << c.seed << "\n"
     << "grid=" << c.grid << "\n"
     << "jobs=" << c.jobs << "\n"
     << "tau_v=" << format_double(c.tau_v) << "\n"
     << "tau_at=" << format_double(c.tau_at) << "\n"
     << "tau_smv=" << format_double(c.tau_smv) << "\n"
     << "a=" << format_double(c.a) << "\n"
     << "r=" << format_double(c.r) << "\n"
     << "out=" << c.out.string() << "\n";
  return os.str();
}

void save_config(const std::filesystem::path& path, const RunConfig& c) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write config: " + path.string());
  os << config_to_ini(c);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "remez-poly", "remez-main", "doubling", "l1",        "capacity", "fekete",   "alexander-taylor",
      "extremal",   "pvalent",    "phi-bound", "bmo",      "mollify",  "ray-lemma"};
  return names;
}

bool is_suite(const std::string& name) { return defaults_table().count(name) > 0; }

RunConfig resolve_defaults(RunConfig c) {
  const auto it = defaults_table().find(c.suite);
  if (it == defaults_table().end()) throw std::invalid_argument("unknown suite: " + c.suite);
  if (c.n == 0) c.n = it->second.n;
  if (c.kmax == 0) c.kmax = it->second.kmax;
  if (c.trials == 0) c.trials = it->second.trials;
  validate(c);
  return c;
}

std::uint64_t trial_seed(std::uint64_t seed, std::int64_t trial) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

using TrialFn = std::function<std::vector<BoundReport>(std::int64_t trial, std::uint64_t seed)>;

// Runs trials 0..count-1 on `jobs` threads and concatenates their reports in
// trial order. Each report is stamped with its trial id and seed.
std::vector<BoundReport> run_trials(const RunConfig& cfg, std::int64_t count, const TrialFn& fn) {
  std::vector<std::vector<BoundReport>> slots(static_cast<std::size_t>(count));
  std::atomic<std::int64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::int64_t error_trial = -1;

  auto worker = [&] {
    for (;;) {
      const std::int64_t t = next.fetch_add(1);
      if (t >= count) return;
      {
        std::lock_guard lock(error_mutex);
        if (error) return;
      }
      const std::uint64_t s = trial_seed(cfg.seed, t);
      try {
        auto reports = fn(t, s);
        for (auto& r : reports) {
          r.trial = t;
          r.seed = s;
        }
        slots[static_cast<std::size_t>(t)] = std::move(reports);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error || t < error_trial) {
          error = std::current_exception();
          error_trial = t;
        }
      }
    }
  };

  const int jobs = static_cast<int>(std::min<std::int64_t>(cfg.jobs, std::max<std::int64_t>(count, 1)));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw std::runtime_error(cfg.suite + " trial " + std::to_string(error_trial) + ": " +
                               e.what());
    }
  }
  std::vector<BoundReport> out;
  for (auto& s : slots)
    for (auto& r : s) out.push_back(std::move(r));
  return out;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vector random_direction(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Vector v(n);
  do {
    for (int i = 0; i < n; ++i) v[i] = g(rng);
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

// Uniform point of the ball B(0, radius) in R^n.
Vector random_in_ball(std::mt19937_64& rng, int n, double radius) {
  return random_direction(rng, n) * radius * std::pow(uniform(rng, 0.0, 1.0), 1.0 / n);
}

CoeffLaw law_for(std::int64_t trial) {
  static constexpr CoeffLaw laws[] = {CoeffLaw::Normal, CoeffLaw::Uniform, CoeffLaw::Sparse};
  return laws[trial % 3];
}

// A polynomial of degree >= 1 (constants are redrawn).
MultiPoly random_nonconstant(int n, int k, std::mt19937_64& rng, CoeffLaw law) {
  for (;;) {
    MultiPoly p = random_poly(n, k, rng(), law);
    if (p.degree() >= 1) return p;
  }
}

MeasurableSet random_omega(const Ball& ball, std::mt19937_64& rng) {
  return random_box_union(ball, uniform_int(rng, 1, 6), 0.05, rng);
}

Tolerances tolerances(const RunConfig& cfg) {
  Tolerances t;
  t.tau_v = cfg.tau_v;
  return t;
}

// ---------------------------------------------------------------- remez

std::vector<BoundReport> remez_poly(const RunConfig& cfg) {
  return run_trials(cfg, cfg.trials, [&](std::int64_t trial, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int n = uniform_int(rng, 1, cfg.n);
    const int k = uniform_int(rng, 1, cfg.kmax);
    const Ball ball(random_in_ball(rng, n, 1.0), uniform(rng, 0.5, 2.0));
    const MeasurableSet omega = random_omega(ball, rng);
    const MultiPoly p = random_nonconstant(n, k, rng, law_for(trial));
    const BoundParams forms[] = {{BoundForm::ChebyshevSharp}, {BoundForm::SimplePoly, 1.0, 0.0}};
    auto both = verify_poly_remez(p, ball, omega, forms, tolerances(cfg));
    BoundReport r = both[0];
    const BoundReport& simple = both[1];
    r.family = "remez-poly";
    r.pass = both[0].pass && simple.pass;
    r.extra["simple"] = {{"bound", simple.bound},   {"rhs", simple.rhs},
                         {"margin", simple.margin}, {"pass", simple.pass},
                         {"fitted_c", simple.fitted}};
    return std::vector<BoundReport>{r};
  });
}

std::vector<BoundReport> remez_main(const RunConfig& cfg) {
  return run_trials(cfg, cfg.trials, [&](std::int64_t trial, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int n = uniform_int(rng, 1, cfg.n);
    const int k = uniform_int(rng, 1, cfg.kmax);
    const MultiPoly p = random_nonconstant(n, k, rng, law_for(trial));
    const PshSample f = make_fr_sample(p, cfg.r);
    const Vector x = random_in_ball(rng, n, 0.5);
    const double t = (1.0 - x.norm()) / cfg.a * uniform(rng, 0.5, 1.0);
    const Ball ball(x, t);
    const MeasurableSet omega = random_omega(ball, rng);
    BoundReport r = verify_main_inequality(f, ball, omega, {BoundForm::MainPsh, 1.0, 0.0}, cfg.a,
                                           tolerances(cfg));
    r.family = "remez-main";
    r.extra["class_ok"] = f.class_ok;
    r.pass = r.pass && f.class_ok;
    return std::vector<BoundReport>{r};
  });
}

std::vector<BoundReport> doubling(const RunConfig& cfg) {
  const double c = 1.0 / std::log(cfg.r);
  return run_trials(cfg, cfg.trials, [&](std::int64_t trial, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int n = uniform_int(rng, 1, cfg.n);
    const int k = uniform_int(rng, 1, cfg.kmax);
    const MultiPoly p = random_nonconstant(n, k, rng, law_for(trial));
    const PshSample f = make_fr_sample(p, cfg.r);
    const CVector x = to_complex(random_in_ball(rng, 2 * n, 0.4));
    const double t = (1.0 - x.norm()) / cfg.a * uniform(rng, 0.5, 1.0);
    const double s = uniform(rng, 1.0, cfg.a);
    BoundReport r = verify_doubling(f, x, t, s, cfg.a, c, tolerances(cfg));
    r.family = "doubling";
    return std::vector<BoundReport>{r};
  });
}

std::vector<BoundReport> l1(const RunConfig& cfg) {
  return run_trials(cfg, cfg.trials, [&](std::int64_t trial, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int n = uniform_int(rng, 1, cfg.n);
    const int k = uniform_int(rng, 1, cfg.kmax);
    const Ball ball(random_in_ball(rng, n, 1.0), uniform(rng, 0.5, 2.0));
    const MeasurableSet omega = random_omega(ball, rng);
    const MultiPoly p = random_nonconstant(n, k, rng, law_for(trial));
    BoundReport r = verify_l1_remez(p, ball, omega, tolerances(cfg));
    r.family = "l1";
    return std::vector<BoundReport>{r};
  });
}

// ---------------------------------------------------------------- potential

RelaxationOptions relaxation(const RunConfig& cfg) {
  RelaxationOptions o;
  o.nodes = cfg.grid;
  return o;
}

std::vector<BoundReport> capacity_suite(const RunConfig& cfg) {
  const double rhos[] = {0.2, 0.4, 0.6};
  return run_trials(cfg, 3, [&](std::int64_t trial, std::uint64_t) {
    const double rho = rhos[trial];
    const Grid2D g = relative_extremal(CompactSet2D::disk(0.0, rho), 1.0, relaxation(cfg));
    double node_error = 0.0;
    for (int j = 0; j < g.u.spec.ny; ++j)
      for (int i = 0; i < g.u.spec.nx; ++i) {
        if (g.mask(i, j) != NodeKind::Interior) continue;
        const double exact = std::log(std::abs(g.u.spec.node(i, j))) / std::log(1.0 / rho);
        node_error = std::max(node_error, std::abs(g.u(i, j) - exact));
      }
    const double exact = 2.0 * kPi / std::log(1.0 / rho);
    const double inner = capacity(g, rho + 0.1);
    const double outer = capacity(g, 0.5 * (rho + 1.0));
    const double cap_error = std::abs(outer - exact) / exact;
    const double flux_spread = std::abs(outer - inner) / exact;
    BoundReport r;
    r.family = "capacity";
    r.lhs = outer;
    r.rhs = exact;
    r.bound = exact;
    r.margin = 0.02 - cap_error;
    r.fitted = cap_error;
    r.pass = cap_error <= 0.02 && flux_spread <= 0.005 && node_error < 1e-2 && g.converged;
    r.extra = {{"rho", rho},
               {"node_error", node_error},
               {"capacity_inner", inner},
               {"flux_spread", flux_spread},
               {"iterations", g.iterations},
               {"residual", g.residual},
               {"converged", g.converged}};
    return std::vector<BoundReport>{r};
  });
}

struct FeketeCase {
  const char* name;
  CompactSet2D k;
  int m;
  double target;
  double tolerance;  // relative
};

std::vector<BoundReport> fekete_suite(const RunConfig& cfg) {
  const std::vector<FeketeCase> cases = {
      {"disk", CompactSet2D::disk(0.0, 1.0), 12, 1.0, 0.03},
      {"segment", CompactSet2D::segment({-0.4, 0.0}, {0.4, 0.0}), 48, 0.2, 0.10},
      {"disk-finite-m", CompactSet2D::disk(0.0, 1.0), 12, std::pow(12.0, 1.0 / 11.0), 1e-6},
  };
  return run_trials(cfg, static_cast<std::int64_t>(cases.size()),
                    [&](std::int64_t trial, std::uint64_t seed) {
                      const FeketeCase& c = cases[trial];
                      const FeketeResult f = fekete(c.k, c.m, seed);
                      const double rel = std::abs(f.delta - c.target) / c.target;
                      BoundReport r;
                      r.family = "fekete";
                      r.lhs = f.delta;
                      r.rhs = c.target;
                      r.bound = c.target;
                      r.margin = c.tolerance - rel;
                      r.fitted = rel;
                      r.pass = rel <= c.tolerance && f.converged;
                      r.extra = {{"case", c.name},          {"m", c.m},
                                 {"tolerance", c.tolerance}, {"iterations", f.iterations},
                                 {"converged", f.converged}};
                      return std::vector<BoundReport>{r};
                    });
}

std::vector<BoundReport> alexander_taylor_suite(const RunConfig& cfg) {
  struct Case {
    const char* name;
    CompactSet2D k;
    bool equality;
  };
  const std::vector<Case> cases = {
      {"disk-0.3", CompactSet2D::disk(0.0, 0.3), true},
      {"disk-0.6", CompactSet2D::disk(0.0, 0.6), true},
      {"segment-0.8", CompactSet2D::segment({-0.4, 0.0}, {0.4, 0.0}), false},
  };
  return run_trials(cfg, static_cast<std::int64_t>(cases.size()),
                    [&](std::int64_t trial, std::uint64_t seed) {
                      const Case& c = cases[trial];
                      const AlexanderTaylorReport at =
                          alexander_taylor_check(c.k, 1.0, 256, seed, cfg.tau_at, relaxation(cfg));
                      BoundReport r;
                      r.family = "alexander-taylor";
                      r.lhs = at.delta_m;
                      r.rhs = at.bound * (1.0 + cfg.tau_at);
                      r.bound = at.bound;
                      r.margin = at.margin;
                      r.fitted = at.delta_m / at.bound;
                      const double agreement = std::abs(at.delta_m - at.bound) / at.bound;
                      r.pass = at.pass && at.converged && (!c.equality || agreement <= cfg.tau_at);
                      r.extra = {{"case", c.name},           {"cap", at.cap},
                                 {"agreement", agreement},   {"equality_case", c.equality},
                                 {"converged", at.converged}};
                      return std::vector<BoundReport>{r};
                    });
}

std::vector<BoundReport> extremal_suite(const RunConfig& cfg) {
  const Complex x(0.3, -0.2);
  const double t = 0.5;
  const double scales[] = {1.0, 1.5, 2.0, 4.0, 8.0};
  const std::int64_t count = 1 + static_cast<std::int64_t>(std::size(scales));
  return run_trials(cfg, count, [&](std::int64_t trial, std::uint64_t seed) {
    BoundReport r;
    if (trial == 0) {
      std::mt19937_64 rng(seed);
      std::vector<Complex> zs;
      for (int i = 0; i < 200; ++i)
        zs.push_back(x + std::polar(t * uniform(rng, 1.0, 3.0), uniform(rng, 0.0, 2.0 * kPi)));
      const RepresentationReport rep =
          polynomial_representation_check(x, t, zs, cfg.kmax, cfg.trials, rng());
      r.family = "extremal-representation";
      r.lhs = rep.max_excess;
      r.rhs = 1e-9;
      r.bound = 1e-9;
      r.margin = 1e-9 - rep.max_excess;
      r.fitted = rep.max_excess;
      r.pass = rep.pass;
      r.extra = rep;
    } else {
      const double s = scales[trial - 1];
      constexpr int samples = 4096;
      double sup = -std::numeric_limits<double>::infinity();
      for (int m = 0; m < samples; ++m)
        sup = std::max(sup, l_extremal_disk(x + std::polar(s * t, 2.0 * kPi * m / samples), x, t));
      r.family = "extremal-growth";
      r.lhs = sup;
      r.rhs = std::log(s);
      r.bound = std::log(s);
      r.margin = 1e-12 - std::abs(sup - std::log(s));
      r.fitted = std::abs(sup - std::log(s));
      r.pass = r.margin >= 0.0;
      r.extra = {{"s", s}};
    }
    return std::vector<BoundReport>{r};
  });
}

// ---------------------------------------------------------------- pvalent

std::vector<BoundReport> pvalent_suite(const RunConfig& cfg) {
  const double grid[] = {0.3, 0.5, 0.7};
  return run_trials(cfg, cfg.trials, [&](std::int64_t trial, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    DoublingConfig dc;
    dc.alpha = grid[trial % 3];
    dc.R = 1.0;
    dc.R_inner = grid[(trial / 3) % 3];
    const int p = uniform_int(rng, 1, cfg.kmax);
    const MultiPoly f = random_nonconstant(1, p, rng, law_for(trial / 9));
    BoundReport r = verify_valent_doubling(f, dc, 1.0, cfg.tau_v);
    r.extra["alpha"] = dc.alpha;
    r.extra["beta"] = dc.beta();
    return std::vector<BoundReport>{r};
  });
}

std::vector<BoundReport> phi_bound_suite(const RunConfig& cfg) {
  const int pmax = cfg.kmax;
  const int lmax = std::max(2 * pmax, 10);
  const ValencyTable table = build_valency_table(lmax);
  std::vector<BoundReport> out;
  std::int64_t trial = 0;
  for (int p = 1; p <= pmax; ++p) {
    const PhiBoundReport ph = check_phi_bound(p, default_beta_grid());
    BoundReport r;
    r.family = "phi-bound";
    r.trial = trial++;
    r.seed = cfg.seed;
    r.fitted = ph.worst_ratio;
    r.lhs = ph.worst_ratio;
    r.rhs = 1.0;
    r.bound = 1.0;
    r.margin = 1.0 - ph.worst_ratio;
    r.pass = ph.pass;
    r.extra = ph;
    out.push_back(std::move(r));
  }
  for (int l = 0; l <= 9; ++l) {
    BoundReport r;
    r.family = "mu-growth";
    r.trial = trial++;
    r.seed = cfg.seed;
    r.lhs = table.mu[l + 1];
    r.bound = 2.0 * l + 1.0;
    r.rhs = r.bound * table.mu[l];
    r.margin = r.rhs - r.lhs;
    r.fitted = table.mu[l] > 0.0 ? r.lhs / table.mu[l] : 0.0;
    r.pass = r.lhs <= r.rhs * (1.0 + 1e-12);
    r.extra = {{"l", l}};
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------- bmo

std::vector<BoundReport> bmo_suite(const RunConfig& cfg) {
  const int kmax = cfg.kmax;
  const BmoDomain circle = BmoDomain::circle();
  auto reports = run_trials(cfg, kmax, [&](std::int64_t trial, std::uint64_t) {
    const int k = static_cast<int>(trial) + 1;
    const BmoReport b =
        bmo_norm(chebyshev_log_on_circle(k), circle, {}, chebyshev_circle_zeros(k));
    BoundReport r;
    r.family = "bmo";
    r.lhs = b.norm;
    r.rhs = b.norm;
    r.bound = k;
    r.fitted = b.norm / k;
    r.pass = std::isfinite(b.norm);
    r.extra = {{"k", k}, {"argmax_center", b.argmax.center[0]}, {"argmax_radius", b.argmax.radius}};
    return std::vector<BoundReport>{r};
  });

  std::int64_t trial = kmax;
  auto summary = [&](const std::string& family, double lhs, double rhs, nlohmann::json extra) {
    BoundReport r;
    r.family = family;
    r.trial = trial++;
    r.seed = cfg.seed;
    r.lhs = lhs;
    r.rhs = rhs;
    r.bound = rhs;
    r.margin = rhs - lhs;
    r.fitted = rhs != 0.0 ? lhs / rhs : 0.0;
    r.pass = lhs <= rhs;
    r.extra = std::move(extra);
    reports.push_back(std::move(r));
  };

  if (kmax >= 4) {
    double worst = 0.0;
    int worst_k = 4;
    for (int k = 4; k <= kmax; ++k)
      if (reports[k - 1].fitted > worst) {
        worst = reports[k - 1].fitted;
        worst_k = k;
      }
    summary("bmo-linear-growth", worst, 1.25 * reports[kmax - 1].fitted,
            {{"worst_k", worst_k}, {"last_k", kmax}});
  }

  const int k = std::min(kmax, 5);
  const auto base = chebyshev_log_on_circle(k);
  const auto zeros = chebyshev_circle_zeros(k);
  const double norm = reports[k - 1].lhs;
  const double scaled =
      bmo_norm([&](const Point& p) { return -2.5 * base(p); }, circle, {}, zeros).norm;
  const double shifted =
      bmo_norm([&](const Point& p) { return base(p) + 3.0; }, circle, {}, zeros).norm;
  summary("bmo-invariance", std::abs(scaled - 2.5 * norm), 1e-9, {{"kind", "scale"}, {"k", k}});
  summary("bmo-invariance", std::abs(shifted - norm), 1e-9, {{"kind", "shift"}, {"k", k}});
  return reports;
}

// ---------------------------------------------------------------- mollify

std::vector<BoundReport> mollify_suite(const RunConfig& cfg) {
  const MollifierKernel kernel = MollifierKernel::bump(2);
  const GridSpec nodes = GridSpec::square(1.0, 21);
  const GridSpec smv_nodes = GridSpec::square(1.5, 41);
  return run_trials(cfg, cfg.trials, [&](std::int64_t trial, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int k = uniform_int(rng, 1, cfg.kmax);
    const MultiPoly p = random_nonconstant(1, k, rng, law_for(trial));
    const std::vector<double> c = p.coefficients();
    const PlanarFunction f = [c](Complex z) {
      Complex acc = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
      return floored_log(std::abs(acc));
    };
    const GridFunction coarse = mollify(f, nodes, 2.0, 0.2, kernel);
    const GridFunction fine = mollify(f, nodes, 2.0, 0.1, kernel);
    double worst = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < nodes.ny; ++j)
      for (int i = 0; i < nodes.nx; ++i) {
        const double v = f(nodes.node(i, j));
        worst = std::max(worst, fine(i, j) - coarse(i, j));
        if (!is_floored(v)) worst = std::max(worst, v - fine(i, j));
      }
    BoundReport mono;
    mono.family = "mollify-monotone";
    mono.lhs = worst;
    mono.rhs = 1e-9;
    mono.bound = 1e-9;
    mono.margin = 1e-9 - worst;
    mono.fitted = worst;
    mono.pass = worst <= 1e-9;
    mono.extra = {{"k", k}, {"eps", {0.2, 0.1}}};

    const PshSample sample = make_fr_sample(p, cfg.r);
    const PlanarFunction g = sample.planar();
    const ExtensionParams params = choose_extension_params(g, 0.5);
    const SubharmonicExtension h(g, params);
    const SubmeanReport smv = submeanvalue_test([&](Complex z) { return h(z); }, smv_nodes,
                                                std::numeric_limits<double>::infinity(), 0.1,
                                                cfg.tau_smv);
    BoundReport ext;
    ext.family = "mollify-extension-smv";
    ext.lhs = static_cast<double>(smv.violations.size());
    ext.rhs = 0.0;
    ext.margin = -ext.lhs;
    ext.fitted = params.c_f();
    ext.pass = smv.ok();
    ext.extra = {{"k", k},
                 {"r_f", params.r_f},
                 {"level", params.level},
                 {"tested", smv.tested},
                 {"skipped", smv.skipped}};
    return std::vector<BoundReport>{mono, ext};
  });
}

// ---------------------------------------------------------------- ray lemma

std::vector<BoundReport> ray_lemma(const RunConfig& cfg) {
  const std::int64_t planar = cfg.trials;
  const std::int64_t spatial = cfg.n >= 3 ? 0 : cfg.trials * 2 / 5;
  return run_trials(cfg, planar + spatial, [&](std::int64_t trial, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int n = trial < planar ? cfg.n : 3;
    const Ball ball(Vector::Zero(n), 1.0);
    const MeasurableSet omega = random_box_union(ball, uniform_int(rng, 1, 8), 0.05, rng);
    const Vector origin = random_in_ball(rng, n, 1.0);
    const BestRay best = best_ray(ball, omega, origin, default_ray_count(n));
    const double volume_ratio = ball.volume() / omega.measure();
    BoundReport r;
    r.family = "ray-lemma";
    r.lhs = best.ratio;
    r.bound = n * volume_ratio;
    r.rhs = r.bound * 1.05;
    r.margin = r.rhs - r.lhs;
    r.fitted = best.ratio / volume_ratio;
    r.pass = r.lhs <= r.rhs;
    r.extra = {{"n", n}, {"volume_ratio", volume_ratio}};
    return std::vector<BoundReport>{r};
  });
}

using SuiteFn = std::vector<BoundReport> (*)(const RunConfig&);

const std::map<std::string, SuiteFn>& runners() {
  static const std::map<std::string, SuiteFn> table = {
      {"remez-poly", remez_poly},
      {"remez-main", remez_main},
      {"doubling", doubling},
      {"l1", l1},
      {"capacity", capacity_suite},
      {"fekete", fekete_suite},
      {"alexander-taylor", alexander_taylor_suite},
      {"extremal", extremal_suite},
      {"pvalent", pvalent_suite},
      {"phi-bound", phi_bound_suite},
      {"bmo", bmo_suite},
      {"mollify", mollify_suite},
      {"ray-lemma", ray_lemma},
  };
  return table;
}

}  // namespace

SuiteResult run_suite(const RunConfig& config) {
  const RunConfig cfg = resolve_defaults(config);
  SuiteResult result;
  result.reports = runners().at(cfg.suite)(cfg);
  for (const auto& r : result.reports) {
    if (!r.pass) ++result.violations;
    if (r.extra.is_object() && r.extra.contains("converged") && !r.extra["converged"].get<bool>())
      result.converged = false;
  }
  return result;
}

void write_suite_outputs(const RunConfig& config, const SuiteResult& result) {
  const RunConfig cfg = resolve_defaults(config);
  const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path(".") : cfg.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string());
  write_jsonl(dir / (cfg.suite + ".jsonl"), result.reports);
  write_summary_csv(dir / (cfg.suite + "_summary.csv"), result.reports);

  const std::string ini = config_to_ini(cfg);
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016zx", std::hash<std::string>{}(ini));
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  const nlohmann::json manifest = {
      {"config", cfg},
      {"config_hash", hash},
      {"seed", cfg.seed},
      {"versions",
       {{"remezlab", kVersion},
        {"compiler", __VERSION__},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                      "." + std::to_string(EIGEN_MINOR_VERSION)},
        {"boost", BOOST_LIB_VERSION}}},
      {"timestamp", stamp},
      {"reports", result.reports.size()},
      {"violations", result.violations},
      {"converged", result.converged},
      {"exit", result.exit_status()}};
  std::ofstream os(dir / (cfg.suite + "_manifest.json"));
  if (!os) throw std::runtime_error("cannot write manifest in " + dir.string());
  os << manifest.dump(2) << "\n";
}

std::vector<FittedConstant> fit_constants(const std::vector<std::filesystem::path>& files,
                                          const std::string& family) {
  std::vector<BoundReport> all;
  for (const auto& f : files)
    for (auto& r : read_jsonl(f))
      if (family.empty() || r.family == family) all.push_back(std::move(r));
  if (all.empty()) throw std::invalid_argument("fit_constants: empty report set");
  return fit_reports(all);
}

}  // namespace remezlab
