#include "betaflow/measure.hpp"

#include <algorithm>
#include <cmath>

#include "betaflow/errors.hpp"

namespace betaflow {

EmpiricalMeasure EmpiricalMeasure::from_samples(std::vector<double> samples) {
  if (samples.empty()) throw InvalidParameter("empirical measure needs at least one sample");
  for (double x : samples)
    if (!std::isfinite(x)) throw InvalidParameter("empirical measure samples must be finite");
  std::sort(samples.begin(), samples.end());
  return EmpiricalMeasure(std::move(samples));
}

EmpiricalMeasure EmpiricalMeasure::from_roots(const RootVector& state) {
  if (state.empty()) throw InvalidParameter("from_roots: empty root vector");
  return EmpiricalMeasure({state.roots().begin(), state.roots().end()});
}

double ks_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  const auto xa = a.samples();
  const auto xb = b.samples();
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < xa.size() || j < xb.size()) {
    double x;
    if (j == xb.size() || (i < xa.size() && xa[i] <= xb[j])) {
      x = xa[i];
    } else {
      x = xb[j];
    }
    while (i < xa.size() && xa[i] == x) ++i;
    while (j < xb.size() && xb[j] == x) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

double ks_to_cdf(const EmpiricalMeasure& a, const std::function<double(double)>& cdf) {
  const auto x = a.samples();
  const double n = static_cast<double>(x.size());
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    best = std::max({best, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return best;
}

double wasserstein1(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  const auto xa = a.samples();
  const auto xb = b.samples();
  if (xa.size() == xb.size()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < xa.size(); ++i) acc += std::abs(xa[i] - xb[i]);
    return acc / static_cast<double>(xa.size());
  }
  // Integrate |F_a - F_b| piecewise between consecutive merged jump points.
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0, j = 0;
  double acc = 0.0;
  double prev = std::min(xa.front(), xb.front());
  while (i < xa.size() || j < xb.size()) {
    double x;
    if (j == xb.size() || (i < xa.size() && xa[i] <= xb[j])) {
      x = xa[i];
    } else {
      x = xb[j];
    }
    acc += (x - prev) * std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb);
    while (i < xa.size() && xa[i] == x) ++i;
    while (j < xb.size() && xb[j] == x) ++j;
    prev = x;
  }
  return acc;
}

double moment(const EmpiricalMeasure& mu, unsigned p) {
  if (p > 16) throw InvalidParameter("moment order above 16");
  double acc = 0.0;
  for (double x : mu.samples()) {
    double term = 1.0;
    for (unsigned k = 0; k < p; ++k) term *= x;
    acc += term;
  }
  return acc / static_cast<double>(mu.size());
}

double log_potential(const EmpiricalMeasure& mu, double z) {
  if (!(z > mu.max())) throw DomainError("log_potential: z must exceed the support");
  double acc = 0.0;
  for (double x : mu.samples()) acc += std::log(z - x);
  return acc / static_cast<double>(mu.size());
}

double stieltjes(const EmpiricalMeasure& mu, double z) {
  if (!(z > mu.max())) throw DomainError("stieltjes: z must exceed the support");
  double acc = 0.0;
  for (double x : mu.samples()) acc += 1.0 / (z - x);
  return acc / static_cast<double>(mu.size());
}

bool check_interlacing(const RootVector& outer, const RootVector& inner, bool strict) {
  if (outer.degree() != inner.degree() + 1)
    throw InvalidParameter("check_interlacing: degrees must differ by exactly one");
  if (inner.empty()) return true;
  const double tol = strict ? 0.0 : 1e-12 * (1.0 + (outer.max() - outer.min()));
  for (std::size_t j = 0; j < inner.degree(); ++j) {
    const double lo = outer[j];
    const double hi = outer[j + 1];
    const double x = inner[j];
    if (strict) {
      if (!(lo < x && x < hi)) return false;
    } else if (!(x >= lo - tol && x <= hi + tol)) {
      return false;
    }
  }
  return true;
}

}  // namespace betaflow
