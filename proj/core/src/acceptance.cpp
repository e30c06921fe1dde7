#include "betaflow/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "betaflow/errors.hpp"
#include "betaflow/experiments.hpp"
#include "betaflow/measure.hpp"
#include "betaflow/poly_flow.hpp"
#include "betaflow/report_io.hpp"

namespace betaflow {

namespace {

constexpr std::uint64_t kAlgebraStream = 101;
constexpr std::uint64_t kIdentityStream = 102;
constexpr std::uint64_t kMarginalStream = 103;
constexpr std::uint64_t kMomentStream = 108;

std::string fmt(double x, int digits = 4) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void add_tables(CriterionResult& r, const ExperimentReport& rep, const std::string& prefix) {
  for (const auto& t : rep.tables) r.csv[prefix + "_" + t.name + ".csv"] = format_csv(t);
}

// -- 1 ---------------------------------------------------------------------

CriterionResult exact_algebra(std::uint64_t seed) {
  CriterionResult r{1, "exact algebra suite", false, {}, 0, 5, {}};
  RandomStream rng({seed, kAlgebraStream});
  const InverseTemperature betas[] = {InverseTemperature::finite(0.2), InverseTemperature::finite(1),
                                      InverseTemperature::finite(2), InverseTemperature::finite(8),
                                      InverseTemperature::infinite()};
  int interlace_fail = 0, vieta_fail = 0, mult_fail = 0, repeated_instances = 0;
  double worst_vieta = 0.0;
  for (int inst = 0; inst < 500; ++inst) {
    const std::size_t d = 2 + static_cast<std::size_t>(rng.uniform() * 11.0);
    std::vector<double> x(d);
    for (auto& v : x) v = -3.0 + 6.0 * rng.uniform();
    if (rng.uniform() < 0.5) {
      const std::size_t copies = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(d - 1));
      for (std::size_t c = 0; c < copies; ++c) {
        const auto i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(d));
        const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(d));
        x[i] = x[j];
      }
    }
    const auto state = RootVector::from_unsorted(x);
    const auto beta = betas[static_cast<std::size_t>(rng.uniform() * 5.0)];
    const auto w = dirichlet_weights(d, beta, rng);
    const auto out = randomized_step(state, w);

    if (!check_interlacing(state, out)) ++interlace_fail;

    double sum_in = 0.0, sum_out = 0.0, weighted = 0.0, max_abs = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      sum_in += state[j];
      weighted += w[j] * state[j];
      max_abs = std::max(max_abs, std::abs(state[j]));
    }
    const double scale = (1.0 + max_abs) * static_cast<double>(d);
    for (double v : out.roots()) sum_out += v;
    const double err = std::abs(sum_out - (sum_in - weighted)) / scale;
    worst_vieta = std::max(worst_vieta, err);
    if (err > 1e-9) ++vieta_fail;

    bool has_repeat = false;
    for (std::size_t j = 0; j < d;) {
      std::size_t k = j;
      while (k < d && state[k] == state[j]) ++k;
      const auto mult = static_cast<std::ptrdiff_t>(k - j);
      if (mult > 1) has_repeat = true;
      const auto seen = std::count(out.roots().begin(), out.roots().end(), state[j]);
      if (seen != mult - 1) ++mult_fail;
      j = k;
    }
    if (has_repeat) ++repeated_instances;
  }
  r.passed = interlace_fail == 0 && vieta_fail == 0 && mult_fail == 0;
  r.detail = "500 instances (" + std::to_string(repeated_instances) + " with repeated roots), " +
             "interlacing failures " + std::to_string(interlace_fail) + ", max scaled Vieta error " +
             fmt(worst_vieta) + ", multiplicity failures " + std::to_string(mult_fail);
  return r;
}

// -- 2 ---------------------------------------------------------------------

CriterionResult triangular_identities(std::uint64_t seed) {
  CriterionResult r{2, "triangular identity oracle", false, {}, 0, 30, {}};
  RandomStream rng({seed, kIdentityStream});
  double worst_mean = 0.0, worst_weighted = 0.0;
  int checked = 0;
  for (std::size_t p = 2; p <= 8; ++p) {
    for (std::size_t q = 1; q <= p; ++q) {
      for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x(p);
        for (auto& v : x) v = -1.0 + 2.0 * rng.uniform();
        const auto state = RootVector::from_unsorted(x);
        const double z = state.max() + 0.5 + 2.0 * rng.uniform();
        const auto w = dirichlet_weights(p, InverseTemperature::finite(2.0), rng);

        const auto xs = xj_values(state, z, q);
        double mean = 0.0, weighted = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
          mean += xs[j];
          weighted += w[j] * xs[j];
        }
        mean /= static_cast<double>(p);

        const double flow_mean = std::exp(log_monic_eval(iterated_derivative(state, q), z));
        const double flow_weighted =
            std::exp(log_monic_eval(iterated_derivative(randomized_step(state, w), q - 1), z));
        worst_mean = std::max(worst_mean, std::abs(mean - flow_mean) / std::abs(flow_mean));
        worst_weighted =
            std::max(worst_weighted, std::abs(weighted - flow_weighted) / std::abs(flow_weighted));
        ++checked;
      }
    }
  }
  r.passed = worst_mean <= 1e-10 && worst_weighted <= 1e-10;
  r.detail = std::to_string(checked) + " (state, z, q) cases, max rel error mean(X) " +
             fmt(worst_mean) + ", weighted sum " + fmt(worst_weighted) + " (tol 1e-10)";
  return r;
}

// -- 3 ---------------------------------------------------------------------

CriterionResult analytic_marginals(std::uint64_t seed) {
  CriterionResult r{3, "n=2 flow marginals vs analytic laws", false, {}, 0, 5, {}};
  const auto lambda0 = RootVector::from_sorted({-1.0, 1.0});
  constexpr std::size_t kTrials = 10000;
  ReportTable samples{"samples", {"beta", "trial", "root"}, {}};
  ReportTable summary{"summary", {"beta", "ks_one_sample", "threshold"}, {}};
  bool ok = true;
  std::string detail;
  for (int b : {2, 1}) {
    const auto beta = InverseTemperature::finite(b);
    std::vector<double> roots(kTrials);
    for (std::size_t t = 0; t < kTrials; ++t) {
      roots[t] = run_chain_final(lambda0, 1, beta,
                                 {seed, derive_stream_index({kMarginalStream, std::uint64_t(b), t})})[0];
      samples.rows.push_back({beta.to_string(), static_cast<std::int64_t>(t), roots[t]});
    }
    auto cdf = b == 2 ? std::function<double(double)>([](double x) {
      return std::clamp((x + 1.0) / 2.0, 0.0, 1.0);
    })
                      : std::function<double(double)>([](double x) {
                          const double u = std::clamp((x + 1.0) / 2.0, 0.0, 1.0);
                          return 2.0 / std::numbers::pi * std::asin(std::sqrt(u));
                        });
    const double ks = ks_to_cdf(EmpiricalMeasure::from_samples(roots), cdf);
    ok = ok && ks < 0.02;
    summary.rows.push_back({beta.to_string(), ks, 0.02});
    detail += std::string(detail.empty() ? "" : ", ") + (b == 2 ? "beta=2 vs uniform KS " : "beta=1 vs arcsine KS ") +
              fmt(ks);
  }
  r.passed = ok;
  r.detail = detail + " (threshold 0.02, 10^4 trials)";
  r.csv["c3_samples.csv"] = format_csv(samples);
  r.csv["c3_summary.csv"] = format_csv(summary);
  return r;
}

// -- 4 ---------------------------------------------------------------------

CriterionResult minors_two_sample(std::uint64_t seed) {
  CriterionResult r{4, "n=16 flow vs matrix minors, two-sample KS", false, {}, 0, 180, {}};
  auto spec = InitialMeasureSpec::parse("uniform:-1,1", 16);
  MinorsConfig cfg;
  cfg.lambda0 = make_initial(spec);
  cfg.observables = default_observables(16, false);
  cfg.trials = 10000;
  cfg.seed = seed;
  bool ok = true;
  std::string detail;
  for (int b : {1, 2}) {
    cfg.beta = b;
    const auto rep = minors_equivalence(cfg);
    std::size_t failing = 0;
    for (const auto& row : rep.table("observables").rows)
      if (std::get<std::int64_t>(row[4]) == 0) ++failing;
    ok = ok && rep.passed();
    detail += std::string(detail.empty() ? "" : "; ") + "beta=" + std::to_string(b) + ": " +
              std::to_string(rep.table("observables").rows.size()) + " observables, max KS " +
              fmt(rep.aggregates["max_ks"].get<double>()) + ", " + std::to_string(failing) + " above";
    add_tables(r, rep, "c4_beta" + std::to_string(b));
  }
  r.passed = ok;
  r.detail = detail + " (critical " + fmt(ks_critical_value(cfg.trials)) + ")";
  return r;
}

// -- 5 ---------------------------------------------------------------------

const std::vector<std::size_t> kDecayGrid{250, 500, 1000, 2000};

CriterionResult beta_decay(std::uint64_t seed) {
  CriterionResult r{5, "beta-independence W1 decay", false, {}, 0, 300, {}};
  BetaIndependenceConfig cfg;
  cfg.initial = InitialMeasureSpec::parse("uniform:-1,1", 2);
  cfg.taus = {0.5};
  cfg.betas = {InverseTemperature::finite(1), InverseTemperature::finite(2)};
  cfg.n_grid = kDecayGrid;
  cfg.trials = 20;
  cfg.seed = seed;
  const auto rep = beta_independence(cfg);

  bool small_at_1000 = true;
  std::string curves;
  for (const auto& entry : rep.aggregates["mean_w1_by_n"]) {
    const auto means = entry["mean_w1"].get<std::vector<double>>();
    small_at_1000 = small_at_1000 && means[2] < 0.05;
    curves += std::string(curves.empty() ? "" : "; ") + "beta=" + entry["beta"].get<std::string>() + " W1";
    for (double m : means) curves += " " + fmt(m, 3);
  }
  bool decay = false, interlaced = false;
  for (const auto& [name, ok] : rep.checks) {
    if (name == "w1_decreasing_in_n") decay = ok;
    if (name == "interlacing") interlaced = ok;
  }
  r.passed = decay && small_at_1000 && interlaced;
  r.detail = curves + " over n=250,500,1000,2000; decay " + (decay ? "yes" : "no") +
             ", W1(1000) < 0.05 " + (small_at_1000 ? "yes" : "no");
  add_tables(r, rep, "c5");
  return r;
}

// -- 6 ---------------------------------------------------------------------

CriterionResult corollary(std::uint64_t seed) {
  CriterionResult r{6, "corollary log comparison", false, {}, 0, 300, {}};
  CorollaryConfig cfg;
  cfg.initial = InitialMeasureSpec::parse("uniform:-1,1", 2);
  cfg.tau = 0.5;
  cfg.n_grid = kDecayGrid;
  cfg.z = cfg.initial.support_bound() + 2.0;
  cfg.trials = 20;
  cfg.seed = seed;
  bool ok = true;
  std::string detail;
  for (int b : {1, 2}) {
    cfg.beta = InverseTemperature::finite(b);
    const auto rep = corollary_comparison(cfg);
    std::vector<double> means;
    for (const auto& e : rep.aggregates["mean_delta_by_n"]) means.push_back(e["mean_delta_n"].get<double>());
    const bool decreasing = strictly_decreasing(means);
    bool interlaced = true;
    for (const auto& [name, c] : rep.checks)
      if (name == "interlacing") interlaced = c;
    ok = ok && decreasing && means[2] < 0.01 && interlaced;
    detail += std::string(detail.empty() ? "" : "; ") + "beta=" + std::to_string(b) + " mean Delta";
    for (double m : means) detail += " " + fmt(m, 3);
    add_tables(r, rep, "c6_beta" + std::to_string(b));
  }
  cfg.beta = InverseTemperature::infinite();
  cfg.trials = 2;
  const auto control = corollary_comparison(cfg);
  bool zero = true;
  for (const auto& row : control.table("trials").rows) zero = zero && std::get<double>(row[4]) == 0.0;
  add_tables(r, control, "c6_betainf");
  r.passed = ok && zero;
  r.detail = detail + "; beta=inf control exactly zero " + (zero ? "yes" : "no");
  return r;
}

// -- 7 ---------------------------------------------------------------------

CriterionResult increments(std::uint64_t seed) {
  CriterionResult r{7, "triangular increments", false, {}, 0, 600, {}};
  TriangularConfig cfg;
  cfg.initial = InitialMeasureSpec::parse("uniform:-1,1", 200);
  cfg.n = 200;
  cfg.tau = 0.5;
  cfg.beta = InverseTemperature::finite(1);
  cfg.z = cfg.initial.support_bound() + 2.0;
  cfg.delta = 0.1;
  cfg.trials = 100;
  cfg.seed = seed;
  const auto rep = triangular_increments(cfg);
  const double max_inc = rep.aggregates["max_increment"].get<double>();
  const auto exceed = rep.aggregates["exceedance_count"].get<std::int64_t>();
  r.passed = rep.passed() && max_inc < 0.1 && exceed == 0;
  r.detail = "max increment " + fmt(max_inc) + " over 100 trials x " +
             std::to_string(rep.aggregates["m"].get<std::size_t>()) + " steps, exceedances at 0.1: " +
             std::to_string(exceed);
  add_tables(r, rep, "c7");
  return r;
}

// -- 8 ---------------------------------------------------------------------

CriterionResult free_moment(std::uint64_t seed) {
  CriterionResult r{8, "semicircle second moment after tau=0.5", false, {}, 0, 600, {}};
  constexpr std::size_t kN = 2000, kTrials = 10;
  const auto beta = InverseTemperature::finite(2);
  const auto initial = make_initial(InitialMeasureSpec::parse("semicircle:1", kN));
  const std::size_t m = kN / 2;
  std::vector<double> m2(kTrials);
  std::vector<char> ok(kTrials, 1);
  parallel_for(kTrials, [&](std::size_t t) {
    auto snaps = run_chain_snapshots(initial, {m}, beta,
                                     {seed, derive_stream_index({kMomentStream, kN, t})});
    ok[t] = snaps.interlaced;
    m2[t] = moment(EmpiricalMeasure::from_roots(snaps.states[0]), 2);
  });
  ReportTable table{"second_moment", {"trial", "second_moment"}, {}};
  bool in_band = true;
  double mean = 0.0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    table.rows.push_back({static_cast<std::int64_t>(t), m2[t]});
    in_band = in_band && std::abs(m2[t] - 0.5) <= 0.03 && ok[t];
    mean += m2[t];
  }
  mean /= kTrials;
  in_band = in_band && std::abs(mean - 0.5) <= 0.03;
  const auto [lo, hi] = std::minmax_element(m2.begin(), m2.end());
  r.passed = in_band;
  r.detail = "mean second moment " + fmt(mean, 6) + ", trial range [" + fmt(*lo, 6) + ", " +
             fmt(*hi, 6) + "] (target 0.5 +- 0.03)";
  r.csv["c8_second_moment.csv"] = format_csv(table);
  return r;
}

using Runner = CriterionResult (*)(std::uint64_t);
constexpr Runner kRunners[] = {exact_algebra, triangular_identities, analytic_marginals,
                               minors_two_sample, beta_decay, corollary, increments, free_moment};

CriterionResult timed(Runner run, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = run(seed);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.budget_seconds > 0 && r.seconds >= r.budget_seconds) {
    r.passed = false;
    r.detail += "; over runtime budget";
  }
  return r;
}

bool selected(const AcceptanceOptions& o, int id) {
  return o.only.empty() || std::find(o.only.begin(), o.only.end(), id) != o.only.end();
}

}  // namespace

std::string format_criterion(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << " " << r.title << ": " << r.detail
      << " (" << fmt(r.seconds, 3) << "s";
  if (r.budget_seconds > 0) out << ", budget " << fmt(r.budget_seconds, 3) << "s";
  out << ")";
  return out.str();
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= 8; ++id) {
    if (!selected(options, id)) continue;
    auto r = timed(kRunners[id - 1], options.seed);
    r.id = id;
    if (options.out_dir) {
      for (const auto& [name, body] : r.csv) {
        std::filesystem::create_directories(*options.out_dir);
        std::ofstream out(*options.out_dir / name, std::ios::binary);
        if (!(out << body)) throw IoError("cannot write " + (*options.out_dir / name).string());
      }
    }
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }

  if (selected(options, 9)) {
    CriterionResult r{9, "reproducibility of criteria 3-8", false, {}, 0, 0, {}};
    const auto start = std::chrono::steady_clock::now();
    std::size_t files = 0, mismatched = 0;
    for (int id = 3; id <= 8; ++id) {
      const CriterionResult* first = nullptr;
      for (const auto& prev : results)
        if (prev.id == id) first = &prev;
      CriterionResult fresh;
      if (!first) fresh = timed(kRunners[id - 1], options.seed);
      const auto& base = first ? first->csv : fresh.csv;
      const auto rerun = timed(kRunners[id - 1], options.seed);
      if (base.empty() || base.size() != rerun.csv.size()) ++mismatched;
      for (const auto& [name, body] : base) {
        ++files;
        auto it = rerun.csv.find(name);
        if (it == rerun.csv.end() || it->second != body) ++mismatched;
      }
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.passed = mismatched == 0 && files > 0;
    r.detail = std::to_string(files) + " CSV files compared byte for byte, " + std::to_string(mismatched) +
               " mismatches";
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace betaflow
