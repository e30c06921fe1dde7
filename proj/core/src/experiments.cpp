#include "betaflow/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "betaflow/errors.hpp"
#include "betaflow/matrix_minors.hpp"
#include "betaflow/measure.hpp"

namespace betaflow {

namespace {

// Stream tags keep the experiments on disjoint random streams.
enum StreamTag : std::uint64_t {
  kTagBetaIndependence = 1,
  kTagTriangular = 2,
  kTagCorollary = 3,
  kTagMinorsFlow = 4,
  kTagMinorsMatrix = 5,
  kTagSimulate = 6,
};

std::uint64_t beta_key(InverseTemperature beta) {
  return beta.is_infinite() ? ~std::uint64_t{0} : std::bit_cast<std::uint64_t>(beta.value());
}

SeedSpec trial_seed(std::uint64_t master, StreamTag tag, std::size_t n, InverseTemperature beta,
                    std::size_t trial) {
  return {master, derive_stream_index({tag, n, beta_key(beta), trial})};
}

std::size_t steps_for(std::size_t n, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidParameter("tau must lie in (0, 1)");
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) * tau));
}

void require_eval_point(double z, double support_bound) {
  if (!(z > support_bound + 1.0))
    throw DomainError("evaluation point z must exceed A + 1 = " + std::to_string(support_bound + 1.0));
}

nlohmann::ordered_json betas_json(const std::vector<InverseTemperature>& betas) {
  auto out = nlohmann::ordered_json::array();
  for (auto b : betas) out.push_back(b.to_string());
  return out;
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

std::string beta_label(InverseTemperature b) { return b.to_string(); }

std::string short_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

bool strictly_decreasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] == 0.0 && xs[i - 1] == 0.0) continue;
    if (!(xs[i] < xs[i - 1])) return false;
  }
  return true;
}

bool decays_with_tolerance(const std::vector<double>& xs) {
  int rises = 0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] == 0.0 && xs[i - 1] == 0.0) continue;
    if (xs[i] < xs[i - 1]) continue;
    if (++rises > 1 || xs[i] > 1.1 * xs[i - 1]) return false;
  }
  return true;
}

bool ExperimentReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

const ReportTable& ExperimentReport::table(const std::string& name) const {
  for (const auto& t : tables)
    if (t.name == name) return t;
  throw InvalidParameter("report has no table named " + name);
}

std::size_t trial_threads() {
  if (const char* env = std::getenv("BETAFLOW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(trial_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

ChainSnapshots run_chain_snapshots(const RootVector& initial, const std::vector<std::size_t>& steps,
                                   InverseTemperature beta, SeedSpec seed) {
  if (!std::is_sorted(steps.begin(), steps.end()))
    throw InvalidParameter("snapshot steps must be ascending");
  const std::size_t last = steps.empty() ? 0 : steps.back();
  if (last > initial.degree()) throw InvalidParameter("more steps than the initial degree");

  ChainSnapshots out;
  out.states.reserve(steps.size());
  RootVector state = initial;
  RandomStream rng(seed);
  auto next = steps.begin();
  for (std::size_t m = 0;; ++m) {
    while (next != steps.end() && *next == m) {
      out.states.push_back(state);
      ++next;
    }
    if (m == last) break;
    auto w = dirichlet_weights(state.degree(), beta, rng);
    RootVector stepped = randomized_step(state, w);
    if (!check_interlacing(state, stepped)) out.interlaced = false;
    state = std::move(stepped);
  }
  return out;
}

// ---------------------------------------------------------------------------

ExperimentReport beta_independence(const BetaIndependenceConfig& cfg) {
  if (cfg.trials == 0) throw InvalidParameter("trials must be positive");
  if (cfg.n_grid.empty() || cfg.taus.empty() || cfg.betas.empty())
    throw InvalidParameter("n_grid, taus and betas must be non-empty");

  ExperimentReport rep;
  rep.experiment = "beta-independence";
  rep.config = {{"initial", cfg.initial.to_string()},
                {"taus", cfg.taus},
                {"betas", betas_json(cfg.betas)},
                {"n_grid", cfg.n_grid},
                {"trials", cfg.trials},
                {"seed", cfg.seed}};

  ReportTable trials{"trials", {"n", "tau", "beta", "trial", "w1_to_ref", "ks_to_ref"}, {}};
  ReportTable agg{"aggregate", {"n", "tau", "beta", "mean_w1", "mean_ks", "trials"}, {}};
  bool interlaced = true;

  // mean W1 per (tau, beta) along n_grid
  std::vector<std::vector<std::vector<double>>> w1_curve(
      cfg.taus.size(), std::vector<std::vector<double>>(cfg.betas.size()));

  for (std::size_t n : cfg.n_grid) {
    const RootVector initial = make_initial(cfg.initial.with_degree(n));
    n = initial.degree();
    std::vector<std::size_t> steps;
    for (double tau : cfg.taus) steps.push_back(steps_for(n, tau));
    std::vector<std::size_t> order(steps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return steps[a] < steps[b]; });
    std::vector<std::size_t> sorted_steps;
    for (auto i : order) sorted_steps.push_back(steps[i]);

    // snapshot index for each tau
    auto snapshot_of = [&](std::size_t tau_idx) {
      return static_cast<std::size_t>(std::find(order.begin(), order.end(), tau_idx) - order.begin());
    };

    auto ref = run_chain_snapshots(initial, sorted_steps, InverseTemperature::infinite(), {});
    interlaced = interlaced && ref.interlaced;
    std::vector<EmpiricalMeasure> ref_measures;
    for (const auto& s : ref.states)
      ref_measures.push_back(s.empty() ? EmpiricalMeasure::from_samples({0.0})
                                       : EmpiricalMeasure::from_roots(s));

    for (std::size_t bi = 0; bi < cfg.betas.size(); ++bi) {
      const auto beta = cfg.betas[bi];
      struct Result {
        std::vector<double> w1, ks;
        std::vector<RootVector> states;
        bool interlaced = true;
      };
      std::vector<Result> results(cfg.trials);
      parallel_for(cfg.trials, [&](std::size_t t) {
        auto snaps = run_chain_snapshots(initial, sorted_steps, beta,
                                         trial_seed(cfg.seed, kTagBetaIndependence, n, beta, t));
        Result r;
        r.interlaced = snaps.interlaced;
        for (std::size_t si = 0; si < snaps.states.size(); ++si) {
          const auto& s = snaps.states[si];
          if (s.empty()) {
            r.w1.push_back(0.0);
            r.ks.push_back(0.0);
            continue;
          }
          auto mu = EmpiricalMeasure::from_roots(s);
          r.w1.push_back(wasserstein1(mu, ref_measures[si]));
          r.ks.push_back(ks_distance(mu, ref_measures[si]));
        }
        r.states = std::move(snaps.states);
        results[t] = std::move(r);
      });

      for (std::size_t ti = 0; ti < cfg.taus.size(); ++ti) {
        const std::size_t si = snapshot_of(ti);
        double sum_w1 = 0.0, sum_ks = 0.0;
        RootSample sample;
        sample.label = "n" + std::to_string(n) + "_tau" + short_double(cfg.taus[ti]) +
                       "_beta" + beta_label(beta);
        sample.support_bound = cfg.initial.support_bound();
        for (std::size_t t = 0; t < cfg.trials; ++t) {
          const auto& r = results[t];
          interlaced = interlaced && r.interlaced;
          trials.rows.push_back({static_cast<std::int64_t>(n), cfg.taus[ti], beta_label(beta),
                                 static_cast<std::int64_t>(t), r.w1[si], r.ks[si]});
          sum_w1 += r.w1[si];
          sum_ks += r.ks[si];
          auto roots = r.states[si].roots();
          sample.roots.insert(sample.roots.end(), roots.begin(), roots.end());
        }
        const double count = static_cast<double>(cfg.trials);
        agg.rows.push_back({static_cast<std::int64_t>(n), cfg.taus[ti], beta_label(beta),
                            sum_w1 / count, sum_ks / count, static_cast<std::int64_t>(cfg.trials)});
        w1_curve[ti][bi].push_back(sum_w1 / count);
        rep.root_samples.push_back(std::move(sample));
      }
    }
  }

  auto ratios = nlohmann::ordered_json::array();
  bool decay = true;
  for (std::size_t ti = 0; ti < cfg.taus.size(); ++ti) {
    for (std::size_t bi = 0; bi < cfg.betas.size(); ++bi) {
      const auto& curve = w1_curve[ti][bi];
      nlohmann::ordered_json entry{{"tau", cfg.taus[ti]}, {"beta", beta_label(cfg.betas[bi])}};
      auto r = nlohmann::ordered_json::array();
      for (std::size_t i = 1; i < curve.size(); ++i)
        r.push_back(curve[i] > 0.0 ? curve[i - 1] / curve[i] : 0.0);
      entry["mean_w1"] = curve;
      entry["ratio_consecutive"] = r;
      ratios.push_back(entry);
      if (!cfg.betas[bi].is_infinite() && !decays_with_tolerance(curve)) decay = false;
    }
  }
  rep.aggregates["metric"] = "W1";
  rep.aggregates["mean_w1_by_n"] = ratios;
  rep.checks.emplace_back("w1_decreasing_in_n", decay);
  rep.checks.emplace_back("interlacing", interlaced);
  rep.tables.push_back(std::move(trials));
  rep.tables.push_back(std::move(agg));
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<double> triangular_log_values(const std::vector<RootVector>& states, std::size_t m,
                                          double z) {
  if (states.size() < m + 1) throw InvalidParameter("trajectory shorter than m");
  std::vector<double> out(m + 1);
  for (std::size_t k = 0; k <= m; ++k)
    out[k] = log_monic_eval(iterated_derivative(states[k], m - k), z);
  return out;
}

ExperimentReport triangular_increments(const TriangularConfig& cfg) {
  if (cfg.trials == 0) throw InvalidParameter("trials must be positive");
  if (!(cfg.delta > 0.0)) throw InvalidParameter("delta must be positive");
  const RootVector initial = make_initial(cfg.initial.with_degree(cfg.n));
  const std::size_t n = initial.degree();
  require_eval_point(cfg.z, cfg.initial.support_bound());
  const std::size_t m = steps_for(n, cfg.tau);

  ExperimentReport rep;
  rep.experiment = "triangular";
  rep.config = {{"initial", cfg.initial.to_string()},
                {"n", n},
                {"tau", cfg.tau},
                {"beta", cfg.beta.to_string()},
                {"z", cfg.z},
                {"delta", cfg.delta},
                {"trials", cfg.trials},
                {"seed", cfg.seed}};

  struct Result {
    std::vector<double> increments;
    RootVector final_state;
    bool interlaced = true;
  };
  std::vector<Result> results(cfg.trials);
  std::vector<std::size_t> all_steps(m + 1);
  for (std::size_t k = 0; k <= m; ++k) all_steps[k] = k;

  parallel_for(cfg.trials, [&](std::size_t t) {
    auto snaps = run_chain_snapshots(initial, all_steps, cfg.beta,
                                     trial_seed(cfg.seed, kTagTriangular, n, cfg.beta, t));
    const auto logs = triangular_log_values(snaps.states, m, cfg.z);
    Result r;
    r.interlaced = snaps.interlaced;
    r.increments.resize(m);
    for (std::size_t k = 0; k < m; ++k) r.increments[k] = std::abs(logs[k + 1] - logs[k]);
    r.final_state = snaps.states.back();
    results[t] = std::move(r);
  });

  ReportTable table{"increments", {"n", "tau", "beta", "trial", "k", "increment"}, {}};
  std::vector<std::int64_t> exceed(m, 0);
  double max_inc = 0.0;
  bool interlaced = true;
  RootSample sample{"n" + std::to_string(n) + "_tau" + short_double(cfg.tau) +
                        "_beta" + cfg.beta.to_string(),
                    cfg.initial.support_bound(),
                    {}};
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const auto& r = results[t];
    interlaced = interlaced && r.interlaced;
    for (std::size_t k = 0; k < m; ++k) {
      const double inc = r.increments[k];
      table.rows.push_back({static_cast<std::int64_t>(n), cfg.tau, cfg.beta.to_string(),
                            static_cast<std::int64_t>(t), static_cast<std::int64_t>(k), inc});
      if (inc > cfg.delta) ++exceed[k];
      max_inc = std::max(max_inc, inc);
    }
    auto roots = r.final_state.roots();
    sample.roots.insert(sample.roots.end(), roots.begin(), roots.end());
  }

  std::vector<double> freq(m);
  std::int64_t total_exceed = 0;
  for (std::size_t k = 0; k < m; ++k) {
    freq[k] = static_cast<double>(exceed[k]) / static_cast<double>(cfg.trials);
    total_exceed += exceed[k];
  }
  const bool enforced = n >= 200;
  rep.aggregates["m"] = m;
  rep.aggregates["max_increment"] = max_inc;
  rep.aggregates["exceedance_count"] = total_exceed;
  rep.aggregates["exceedance_frequency_by_k"] = freq;
  rep.aggregates["threshold_enforced"] = enforced;
  rep.checks.emplace_back("no_exceedance", !enforced || total_exceed == 0);
  rep.checks.emplace_back("interlacing", interlaced);
  rep.tables.push_back(std::move(table));
  rep.root_samples.push_back(std::move(sample));
  return rep;
}

// ---------------------------------------------------------------------------

ExperimentReport corollary_comparison(const CorollaryConfig& cfg) {
  if (cfg.trials == 0) throw InvalidParameter("trials must be positive");
  if (cfg.n_grid.empty()) throw InvalidParameter("n_grid must be non-empty");
  require_eval_point(cfg.z, cfg.initial.support_bound());

  ExperimentReport rep;
  rep.experiment = "corollary";
  rep.config = {{"initial", cfg.initial.to_string()},
                {"tau", cfg.tau},
                {"beta", cfg.beta.to_string()},
                {"n_grid", cfg.n_grid},
                {"z", cfg.z},
                {"trials", cfg.trials},
                {"seed", cfg.seed},
                {"threshold", cfg.threshold}};

  ReportTable table{"trials", {"n", "tau", "beta", "trial", "delta_n"}, {}};
  std::vector<double> means;
  auto per_n = nlohmann::ordered_json::array();
  bool interlaced = true;

  for (std::size_t n : cfg.n_grid) {
    const RootVector initial = make_initial(cfg.initial.with_degree(n));
    n = initial.degree();
    const std::size_t m = steps_for(n, cfg.tau);
    const double reference = log_monic_eval(iterated_derivative(initial, m), cfg.z);

    std::vector<double> deltas(cfg.trials);
    std::vector<RootVector> finals(cfg.trials);
    std::vector<char> ok(cfg.trials, 1);
    parallel_for(cfg.trials, [&](std::size_t t) {
      auto snaps = run_chain_snapshots(initial, {m}, cfg.beta,
                                       trial_seed(cfg.seed, kTagCorollary, n, cfg.beta, t));
      ok[t] = snaps.interlaced;
      deltas[t] = std::abs(log_monic_eval(snaps.states[0], cfg.z) - reference) /
                  static_cast<double>(n);
      finals[t] = std::move(snaps.states[0]);
    });

    RootSample sample{"n" + std::to_string(n) + "_tau" + short_double(cfg.tau) +
                          "_beta" + cfg.beta.to_string(),
                      cfg.initial.support_bound(),
                      {}};
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      interlaced = interlaced && ok[t];
      table.rows.push_back({static_cast<std::int64_t>(n), cfg.tau, cfg.beta.to_string(),
                            static_cast<std::int64_t>(t), deltas[t]});
      auto roots = finals[t].roots();
      sample.roots.insert(sample.roots.end(), roots.begin(), roots.end());
    }
    means.push_back(mean_of(deltas));
    per_n.push_back({{"n", n}, {"m", m}, {"mean_delta_n", means.back()}});
    rep.root_samples.push_back(std::move(sample));
  }

  rep.aggregates["mean_delta_by_n"] = per_n;
  rep.checks.emplace_back("delta_decreasing_in_n", strictly_decreasing(means));
  rep.checks.emplace_back("delta_below_threshold_at_largest_n", means.back() < cfg.threshold);
  rep.checks.emplace_back("interlacing", interlaced);
  rep.tables.push_back(std::move(table));
  return rep;
}

// ---------------------------------------------------------------------------

std::string Observable::name() const {
  if (kind == Kind::Mean) return "mean@m" + std::to_string(depth);
  return "order" + std::to_string(index) + "@m" + std::to_string(depth);
}

std::vector<Observable> default_observables(std::size_t n, bool include_means) {
  if (n == 0) throw InvalidParameter("default_observables: n must be positive");
  std::vector<std::size_t> depths{std::min<std::size_t>(1, n - 1), std::min(n / 2, n - 1)};
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
  std::vector<Observable> out;
  for (std::size_t d : depths) {
    for (std::size_t i = 1; i <= n - d; ++i)
      out.push_back({Observable::Kind::OrderStatistic, d, i});
    if (include_means) out.push_back({Observable::Kind::Mean, d, 0});
  }
  return out;
}

double ks_critical_value(std::size_t trials) {
  if (trials == 0) throw InvalidParameter("trials must be positive");
  return 1.628 * std::sqrt(2.0 / static_cast<double>(trials));
}

namespace {

double observe(const Observable& o, const RootVector& state) {
  if (o.kind == Observable::Kind::Mean) {
    double s = 0.0;
    for (double x : state.roots()) s += x;
    return s / static_cast<double>(state.degree());
  }
  return state[o.index - 1];
}

}  // namespace

ExperimentReport minors_equivalence(const MinorsConfig& cfg) {
  const std::size_t n = cfg.lambda0.degree();
  if (n < 1 || n > 64) throw InvalidParameter("minors_equivalence: degree must be in [1, 64]");
  if (cfg.beta != 1 && cfg.beta != 2) throw InvalidParameter("minors_equivalence: beta must be 1 or 2");
  if (cfg.trials == 0) throw InvalidParameter("trials must be positive");
  const auto observables = cfg.observables.empty() ? default_observables(n) : cfg.observables;
  for (const auto& o : observables) {
    if (o.depth >= n && !(n == 1 && o.depth == 0))
      throw InvalidParameter("observable depth must be below the degree");
    if (o.kind == Observable::Kind::OrderStatistic && (o.index < 1 || o.index > n - o.depth))
      throw InvalidParameter("order statistic index out of range for " + o.name());
  }

  std::size_t max_depth = 0;
  for (const auto& o : observables) max_depth = std::max(max_depth, o.depth);
  std::vector<std::size_t> depths;
  for (std::size_t d = 0; d <= max_depth; ++d) depths.push_back(d);

  const auto beta = InverseTemperature::finite(static_cast<double>(cfg.beta));
  const auto ensemble = cfg.beta == 1 ? MatrixEnsemble::Orthogonal : MatrixEnsemble::Unitary;

  ExperimentReport rep;
  rep.experiment = "minors";
  auto names = nlohmann::ordered_json::array();
  for (const auto& o : observables) names.push_back(o.name());
  rep.config = {{"lambda0", std::vector<double>(cfg.lambda0.roots().begin(), cfg.lambda0.roots().end())},
                {"beta", cfg.beta},
                {"observables", names},
                {"trials", cfg.trials},
                {"seed", cfg.seed}};

  const std::size_t k = observables.size();
  std::vector<double> flow(cfg.trials * k), matrix(cfg.trials * k);
  std::vector<char> ok(cfg.trials, 1);
  parallel_for(cfg.trials, [&](std::size_t t) {
    auto snaps = run_chain_snapshots(cfg.lambda0, depths, beta,
                                     trial_seed(cfg.seed, kTagMinorsFlow, n, beta, t));
    auto minors = minor_spectrum_chain(cfg.lambda0, ensemble,
                                       trial_seed(cfg.seed, kTagMinorsMatrix, n, beta, t));
    ok[t] = snaps.interlaced;
    for (std::size_t i = 0; i < k; ++i) {
      flow[t * k + i] = observe(observables[i], snaps.states[observables[i].depth]);
      matrix[t * k + i] = observe(observables[i], minors[observables[i].depth]);
    }
  });

  const double crit = ks_critical_value(cfg.trials);
  ReportTable table{"observables", {"observable", "depth_m", "ks_two_sample", "critical_value", "pass"}, {}};
  bool all_pass = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> a(cfg.trials), b(cfg.trials);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      a[t] = flow[t * k + i];
      b[t] = matrix[t * k + i];
    }
    const double ks =
        ks_distance(EmpiricalMeasure::from_samples(std::move(a)), EmpiricalMeasure::from_samples(std::move(b)));
    const bool pass = ks < crit;
    all_pass = all_pass && pass;
    worst = std::max(worst, ks);
    table.rows.push_back({observables[i].name(), static_cast<std::int64_t>(observables[i].depth), ks,
                          crit, static_cast<std::int64_t>(pass ? 1 : 0)});
  }
  rep.aggregates["critical_value"] = crit;
  rep.aggregates["max_ks"] = worst;
  rep.checks.emplace_back("all_below_critical_value", all_pass);
  rep.checks.emplace_back("interlacing", std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; }));
  rep.tables.push_back(std::move(table));
  return rep;
}

// ---------------------------------------------------------------------------

ExperimentReport simulate(const SimulateConfig& cfg) {
  const RootVector initial = make_initial(cfg.initial);
  const std::size_t n = initial.degree();
  if (cfg.steps > n) throw InvalidParameter("simulate: more steps than the degree");

  ExperimentReport rep;
  rep.experiment = "simulate";
  rep.config = {{"initial", cfg.initial.to_string()},
                {"n", n},
                {"steps", cfg.steps},
                {"beta", cfg.beta.to_string()},
                {"seed", cfg.seed},
                {"trial", cfg.trial}};

  std::vector<std::size_t> steps(cfg.steps + 1);
  for (std::size_t m = 0; m <= cfg.steps; ++m) steps[m] = m;
  auto snaps = run_chain_snapshots(initial, steps, cfg.beta,
                                   trial_seed(cfg.seed, kTagSimulate, n, cfg.beta, cfg.trial));

  ReportTable table{"roots", {"m", "j", "root"}, {}};
  for (std::size_t m = 0; m < snaps.states.size(); ++m) {
    const auto& s = snaps.states[m];
    for (std::size_t j = 0; j < s.degree(); ++j)
      table.rows.push_back({static_cast<std::int64_t>(m), static_cast<std::int64_t>(j), s[j]});
  }
  const auto& last = snaps.states.back();
  rep.root_samples.push_back({"n" + std::to_string(n) + "_m" + std::to_string(cfg.steps) + "_beta" +
                                  cfg.beta.to_string(),
                              cfg.initial.support_bound(),
                              std::vector<double>(last.roots().begin(), last.roots().end())});
  rep.aggregates["final_degree"] = last.degree();
  rep.checks.emplace_back("interlacing", snaps.interlaced);
  rep.tables.push_back(std::move(table));
  return rep;
}

}  // namespace betaflow
