#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "betaflow/initial_measure.hpp"
#include "betaflow/poly_flow.hpp"
#include "betaflow/rng.hpp"

namespace betaflow {

using Cell = std::variant<std::int64_t, double, std::string>;

/// A fixed-schema table; every row has one cell per column.
struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Pooled roots of one (n, tau, beta) configuration, for histogram output.
struct RootSample {
  std::string label;
  double support_bound = 1.0;
  std::vector<double> roots;
};

struct ExperimentReport {
  std::string experiment;
  nlohmann::ordered_json config;
  std::vector<ReportTable> tables;
  nlohmann::ordered_json aggregates = nlohmann::ordered_json::object();
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<RootSample> root_samples;
  double wall_seconds = 0.0;  // not serialized: outputs stay byte-reproducible

  bool passed() const;
  const ReportTable& table(const std::string& name) const;
};

/// Each entry below the previous one; consecutive exact zeros also pass.
bool strictly_decreasing(const std::vector<double>& xs);
/// As strictly_decreasing, but one rise of at most 10% is tolerated.
bool decays_with_tolerance(const std::vector<double>& xs);

/// Worker count for trial pools: BETAFLOW_THREADS if set (>= 1), else the
/// hardware concurrency.
std::size_t trial_threads();

/// Runs body(i) for i in [0, count) on up to trial_threads() threads. The
/// first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Chain states at the requested step counts (ascending), plus whether every
/// step interlaced with its predecessor.
struct ChainSnapshots {
  std::vector<RootVector> states;
  bool interlaced = true;
};
ChainSnapshots run_chain_snapshots(const RootVector& initial, const std::vector<std::size_t>& steps,
                                   InverseTemperature beta, SeedSpec seed);

struct BetaIndependenceConfig {
  InitialMeasureSpec initial;
  std::vector<double> taus{0.5};
  std::vector<InverseTemperature> betas{InverseTemperature::finite(1.0),
                                        InverseTemperature::finite(2.0)};
  std::vector<std::size_t> n_grid{250, 500, 1000};
  std::size_t trials = 20;
  std::uint64_t seed = 42;
};

/// For each (n, tau, beta): W1 and KS distance between mu_{n, floor(n tau)} and
/// the beta = inf state at the same n. Passes iff, for every finite beta and
/// tau, mean W1 decreases along n_grid with at most one rise, itself within 10%.
ExperimentReport beta_independence(const BetaIndependenceConfig& cfg);

struct TriangularConfig {
  InitialMeasureSpec initial;
  double tau = 0.5;
  InverseTemperature beta = InverseTemperature::finite(1.0);
  std::size_t n = 200;
  double z = 3.0;
  double delta = 0.1;
  std::size_t trials = 100;
  std::uint64_t seed = 42;
};

/// log P^{m-k}_{n,k}(z) for k = 0..m along one trajectory: the renormalized
/// (m-k)-th derivative of state k evaluated at z.
std::vector<double> triangular_log_values(const std::vector<RootVector>& states, std::size_t m,
                                          double z);

/// Increments |log P^{m-k-1}_{n,k+1}(z) - log P^{m-k}_{n,k}(z)|, k = 0..m-1.
/// Passes iff no increment exceeds delta (enforced for n >= 200 only).
ExperimentReport triangular_increments(const TriangularConfig& cfg);

struct CorollaryConfig {
  InitialMeasureSpec initial;
  double tau = 0.5;
  InverseTemperature beta = InverseTemperature::finite(2.0);
  std::vector<std::size_t> n_grid{250, 500, 1000};
  double z = 3.0;
  std::size_t trials = 20;
  std::uint64_t seed = 42;
  double threshold = 0.01;
};

/// Delta_n = |log P_{n,m}(z) - log P^m_{n,0}(z)| / n per trial. Passes iff the
/// mean decreases strictly along n_grid and is below `threshold` at the last n.
ExperimentReport corollary_comparison(const CorollaryConfig& cfg);

/// An order statistic (1-based index) or the mean of the state at depth m.
struct Observable {
  enum class Kind { OrderStatistic, Mean };
  Kind kind = Kind::OrderStatistic;
  std::size_t depth = 1;
  std::size_t index = 1;

  std::string name() const;
};

/// Every order statistic at m = 1 and m = floor(n/2), plus the state mean at
/// both depths (depths clipped to n-1 and deduplicated).
std::vector<Observable> default_observables(std::size_t n, bool include_means = true);

struct MinorsConfig {
  RootVector lambda0;
  int beta = 2;  // 1: orthogonal, 2: unitary
  std::vector<Observable> observables;  // empty: default_observables
  std::size_t trials = 10000;
  std::uint64_t seed = 42;
};

/// Two-sample KS between the flow chain and the matrix-minor chain for each
/// observable. Passes iff every statistic is below 1.628 sqrt(2 / trials).
ExperimentReport minors_equivalence(const MinorsConfig& cfg);

/// Two-sample KS critical value at alpha = 0.01 for equal sample sizes.
double ks_critical_value(std::size_t trials);

struct SimulateConfig {
  InitialMeasureSpec initial;
  std::size_t steps = 0;
  InverseTemperature beta = InverseTemperature::finite(2.0);
  std::uint64_t seed = 42;
  std::uint64_t trial = 0;
};

/// Raw dump of one chain: table "roots" with columns m, j, root.
ExperimentReport simulate(const SimulateConfig& cfg);

}  // namespace betaflow
