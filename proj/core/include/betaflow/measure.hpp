#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "betaflow/poly_flow.hpp"

namespace betaflow {

/// Uniform probability measure on a sorted, non-empty sample.
class EmpiricalMeasure {
 public:
  /// Sorts the samples. Throws InvalidParameter when empty or non-finite.
  static EmpiricalMeasure from_samples(std::vector<double> samples);
  static EmpiricalMeasure from_roots(const RootVector& state);

  std::span<const double> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double max() const { return samples_.back(); }
  double min() const { return samples_.front(); }

 private:
  explicit EmpiricalMeasure(std::vector<double> s) : samples_(std::move(s)) {}
  std::vector<double> samples_;
};

/// sup |F_a - F_b| over the merged jump set.
double ks_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

/// One-sample KS statistic against a continuous CDF.
double ks_to_cdf(const EmpiricalMeasure& a, const std::function<double(double)>& cdf);

/// Integral of |F_a - F_b|.
double wasserstein1(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

/// (1/count) sum x^p, p <= 16.
double moment(const EmpiricalMeasure& mu, unsigned p);

/// Mean of log(z - x); z must exceed the largest sample.
double log_potential(const EmpiricalMeasure& mu, double z);

/// Mean of 1/(z - x); z must exceed the largest sample.
double stieltjes(const EmpiricalMeasure& mu, double z);

/// outer_1 <= inner_1 <= outer_2 <= ... <= inner_{d-1} <= outer_d. The
/// non-strict form tolerates 1e-12 * (1 + span) slack; strict uses < exactly.
bool check_interlacing(const RootVector& outer, const RootVector& inner, bool strict = false);

}  // namespace betaflow
