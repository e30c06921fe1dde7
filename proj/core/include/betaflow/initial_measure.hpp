#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "betaflow/poly_flow.hpp"

namespace betaflow {

enum class MeasureKind { UniformInterval, Semicircle, Atoms, ExplicitList };

/// Law of the initial roots. Roots are the midpoint quantiles
/// F^-1((2j-1)/(2n)), j = 1..n, so the construction is deterministic.
struct InitialMeasureSpec {
  MeasureKind kind = MeasureKind::UniformInterval;
  double lo = -1.0;  // uniform_interval
  double hi = 1.0;
  double variance = 1.0;                            // semicircle
  std::vector<std::pair<double, double>> atoms;     // (position, weight)
  std::string path;                                 // explicit_list source
  std::vector<double> explicit_roots;               // explicit_list values
  std::size_t n = 0;

  /// Parses "uniform:a,b", "semicircle:var", "atoms:x1:w1,x2:w2,..." or
  /// "file:<path>" (one real per line; the file is read immediately).
  static InitialMeasureSpec parse(const std::string& text, std::size_t n);

  /// Same spec at another degree (explicit lists keep their own size).
  InitialMeasureSpec with_degree(std::size_t degree) const;

  /// Canonical text form, accepted by parse().
  std::string to_string() const;

  /// A with every generated root in [-A, A].
  double support_bound() const;
};

/// Reads an explicit-roots file: one plain decimal per line, blank lines ignored.
std::vector<double> read_roots_file(const std::string& path);

RootVector make_initial(const InitialMeasureSpec& spec);

/// CDF of the centred semicircle law with the given variance (radius 2 sigma).
double semicircle_cdf(double x, double variance);
/// Inverse of semicircle_cdf by bisection.
double semicircle_quantile(double u, double variance);

}  // namespace betaflow
