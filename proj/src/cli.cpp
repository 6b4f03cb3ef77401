#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "remezlab/grid.hpp"
#include "remezlab/potential.hpp"
#include "remezlab/suites.hpp"

namespace remezlab {

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 3;

std::filesystem::path default_out() {
  if (const char* env = std::getenv("REMEZLAB_OUT"); env && *env) return env;
  return "remezlab-out";
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Numerical verification harness for Remez-type inequalities", "remezlab"};
  app.require_subcommand(1);

  RunConfig flags;
  std::string config_path;
  std::string suite;
  auto* run = app.add_subcommand("run", "run a verification suite");
  run->add_option("suite", suite, "suite name (see list-suites)")->required();
  run->add_option("--config", config_path, "INI file with a [run] section");
  auto* o_seed = run->add_option("--seed", flags.seed, "base seed");
  auto* o_trials = run->add_option("--trials", flags.trials, "trial count");
  auto* o_n = run->add_option("--n", flags.n, "maximal dimension");
  auto* o_kmax = run->add_option("--kmax", flags.kmax, "maximal degree");
  auto* o_grid = run->add_option("--grid", flags.grid, "relaxation nodes per axis");
  auto* o_jobs = run->add_option("--jobs", flags.jobs, "worker threads");
  auto* o_tol = run->add_option("--tol", flags.tau_v, "verification tolerance tau_v");
  auto* o_tau_at = run->add_option("--tau-at", flags.tau_at, "Alexander-Taylor tolerance");
  auto* o_tau_smv = run->add_option("--tau-smv", flags.tau_smv, "sub-mean-value tolerance");
  auto* o_a = run->add_option("--a", flags.a, "ball dilation a");
  auto* o_r = run->add_option("--r", flags.r, "class radius r");
  auto* o_out = run->add_option("--out", flags.out, "output directory");

  std::vector<std::string> fit_files;
  std::string fit_family;
  std::string fit_out;
  auto* fit = app.add_subcommand("fit", "fit constants from report files");
  fit->add_option("files", fit_files, "JSON-lines report files")->required()->check(
      CLI::ExistingFile);
  fit->add_option("--family", fit_family, "restrict to one family");
  fit->add_option("--out", fit_out, "CSV output (stdout when omitted)");

  std::string grid_kind = "disk";
  double grid_size = 0.4;
  int grid_nodes = 129;
  std::string grid_from;
  std::string grid_out;
  auto* grid = app.add_subcommand("export-grid", "write an extremal function grid as CSV");
  grid->add_option("--kind", grid_kind, "disk or segment")->check(
      CLI::IsMember({"disk", "segment"}));
  grid->add_option("--size", grid_size, "disk radius or segment length");
  grid->add_option("--grid", grid_nodes, "nodes per axis");
  grid->add_option("--from", grid_from, "convert an existing binary grid instead")->check(
      CLI::ExistingFile);
  grid->add_option("--out", grid_out, "output path prefix")->required();

  auto* list = app.add_subcommand("list-suites", "print registered suite names");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*list) {
      for (const auto& name : suite_names()) std::cout << name << "\n";
      return 0;
    }

    if (*run) {
      if (!is_suite(suite)) {
        std::cerr << "unknown suite: " << suite << " (see list-suites)\n";
        return kUsageError;
      }
      RunConfig cfg;
      if (!config_path.empty()) cfg = load_config(config_path);
      cfg.suite = suite;
      if (*o_seed) cfg.seed = flags.seed;
      if (*o_trials) cfg.trials = flags.trials;
      if (*o_n) cfg.n = flags.n;
      if (*o_kmax) cfg.kmax = flags.kmax;
      if (*o_grid) cfg.grid = flags.grid;
      if (*o_jobs) cfg.jobs = flags.jobs;
      if (*o_tol) cfg.tau_v = flags.tau_v;
      if (*o_tau_at) cfg.tau_at = flags.tau_at;
      if (*o_tau_smv) cfg.tau_smv = flags.tau_smv;
      if (*o_a) cfg.a = flags.a;
      if (*o_r) cfg.r = flags.r;
      if (*o_out) cfg.out = flags.out;
      if (cfg.out.empty()) cfg.out = default_out();
      try {
        cfg = resolve_defaults(cfg);
      } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kUsageError;
      }
      const SuiteResult result = run_suite(cfg);
      write_suite_outputs(cfg, result);
      std::cout << cfg.suite << ": " << result.reports.size() << " reports, " << result.violations
                << " violations" << (result.converged ? "" : ", solver not converged") << " -> "
                << cfg.out.string() << "\n";
      return result.exit_status();
    }

    if (*fit) {
      std::vector<std::filesystem::path> files(fit_files.begin(), fit_files.end());
      const auto fits = fit_constants(files, fit_family);
      if (fit_out.empty()) {
        std::cout << "family,samples,value,worst_trial\n";
        for (const auto& f : fits)
          std::cout << f.family << "," << f.samples << "," << std::setprecision(17) << f.value
                    << "," << f.worst_trial << "\n";
      } else {
        write_fitted_csv(fit_out, fits);
      }
      return 0;
    }

    if (*grid) {
      GridFunction g;
      std::string description;
      if (!grid_from.empty()) {
        g = read_grid(grid_from);
      } else {
        const CompactSet2D k = grid_kind == "disk"
                                   ? CompactSet2D::disk(0.0, grid_size)
                                   : CompactSet2D::segment({-grid_size / 2, 0.0},
                                                           {grid_size / 2, 0.0});
        RelaxationOptions opt;
        opt.nodes = grid_nodes;
        g = relative_extremal(k, 1.0, opt).u;
        std::ostringstream os;
        os << "relative extremal function, " << grid_kind << " " << grid_size;
        description = os.str();
        write_grid(grid_out + ".bin", g, description);
      }
      write_grid_csv(grid_out + ".csv", g);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace remezlab
