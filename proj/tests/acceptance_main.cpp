// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <iostream>

#include <CLI11.hpp>

#include "betaflow/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"betaflow acceptance suite"};
  betaflow::AcceptanceOptions opts;
  std::string out;
  app.add_option("--seed", opts.seed, "Master seed")->capture_default_str();
  app.add_option("--only", opts.only, "Criterion ids to run (default: all)")->delimiter(',');
  app.add_option("--out", out, "Directory for the CSV outputs of criteria 3-8");
  CLI11_PARSE(app, argc, argv);
  if (!out.empty()) opts.out_dir = out;

  bool ok = true;
  betaflow::run_acceptance(opts, [&](const betaflow::CriterionResult& r) {
    std::cout << betaflow::format_criterion(r) << std::endl;
    ok = ok && r.passed;
  });
  std::cout << (ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << std::endl;
  return ok ? 0 : 1;
}
