#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "betaflow/acceptance.hpp"
#include "betaflow/errors.hpp"
#include "betaflow/experiments.hpp"
#include "betaflow_cli/config.hpp"

namespace betaflow::cli {

namespace {

std::vector<ExperimentReport> dispatch(const RunConfig& c) {
  std::vector<ExperimentReport> reports;
  const bool suffix = c.betas.size() > 1;
  auto tag = [&](ExperimentReport rep, InverseTemperature b) {
    if (suffix) rep.experiment += "_beta" + b.to_string();
    reports.push_back(std::move(rep));
  };

  if (c.experiment == "beta-independence") {
    BetaIndependenceConfig cfg;
    cfg.initial = c.initial;
    cfg.taus = c.taus;
    cfg.betas = c.betas;
    cfg.n_grid = c.n_grid;
    cfg.trials = c.trials;
    cfg.seed = c.seed;
    reports.push_back(beta_independence(cfg));
  } else if (c.experiment == "triangular") {
    for (auto b : c.betas) {
      TriangularConfig cfg;
      cfg.initial = c.initial;
      cfg.tau = c.taus[0];
      cfg.beta = b;
      cfg.n = c.n_grid[0];
      cfg.z = c.z;
      cfg.delta = c.delta;
      cfg.trials = c.trials;
      cfg.seed = c.seed;
      tag(triangular_increments(cfg), b);
    }
  } else if (c.experiment == "corollary") {
    for (auto b : c.betas) {
      CorollaryConfig cfg;
      cfg.initial = c.initial;
      cfg.tau = c.taus[0];
      cfg.beta = b;
      cfg.n_grid = c.n_grid;
      cfg.z = c.z;
      cfg.trials = c.trials;
      cfg.seed = c.seed;
      cfg.threshold = c.threshold;
      tag(corollary_comparison(cfg), b);
    }
  } else if (c.experiment == "minors") {
    for (auto b : c.betas) {
      MinorsConfig cfg;
      cfg.lambda0 = make_initial(c.initial);
      cfg.beta = static_cast<int>(b.value());
      cfg.trials = c.trials;
      cfg.seed = c.seed;
      tag(minors_equivalence(cfg), b);
    }
  } else if (c.experiment == "simulate") {
    for (auto b : c.betas) {
      SimulateConfig cfg;
      cfg.initial = c.initial;
      cfg.steps = static_cast<std::size_t>(std::floor(static_cast<double>(c.n_grid[0]) * c.taus[0]));
      cfg.beta = b;
      cfg.seed = c.seed;
      tag(simulate(cfg), b);
    }
  }
  return reports;
}

}  // namespace

int run(const RunConfig& c) {
  if (c.experiment == "all") {
    AcceptanceOptions opts;
    opts.seed = c.seed;
    if (c.formats.csv) opts.out_dir = c.out_dir;
    bool all_pass = true;
    run_acceptance(opts, [&](const CriterionResult& r) {
      std::cout << format_criterion(r) << std::endl;
      all_pass = all_pass && r.passed;
    });
    return all_pass ? kExitPass : kExitThresholdFailure;
  }

  const auto start = std::chrono::steady_clock::now();
  const auto reports = dispatch(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool all_pass = true;
  for (const auto& rep : reports) {
    for (const auto& path : write_report(rep, c.out_dir, c.formats)) std::cout << "wrote " << path.string() << "\n";
    for (const auto& [name, ok] : rep.checks)
      std::cout << rep.experiment << ": " << name << " " << (ok ? "PASS" : "FAIL") << "\n";
    all_pass = all_pass && rep.passed();
  }
  std::cerr << "wall time " << secs << " s\n";
  return all_pass ? kExitPass : kExitThresholdFailure;
}

int main_entry(int argc, const char* const* argv) {
  try {
    auto cfg = parse_config(argc, argv);
    if (!cfg) return kExitPass;
    return run(*cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code();
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return kExitInvalidParameter;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitEvalPoint;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << " (magnitude " << e.magnitude() << ")\n";
    return kExitNumeric;
  }
}

}  // namespace betaflow::cli
