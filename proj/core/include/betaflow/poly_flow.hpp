#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "betaflow/rng.hpp"

namespace betaflow {

/// Sorted multiset of finite real roots; represents the monic polynomial
/// prod_j (z - roots[j]). Degree zero (no roots) is the constant 1.
class RootVector {
 public:
  RootVector() = default;

  /// Sorts the input. Throws InvalidParameter on non-finite entries.
  static RootVector from_unsorted(std::vector<double> roots);
  /// Requires nondecreasing finite input.
  static RootVector from_sorted(std::vector<double> roots);

  std::span<const double> roots() const noexcept { return roots_; }
  std::size_t degree() const noexcept { return roots_.size(); }
  bool empty() const noexcept { return roots_.empty(); }
  double operator[](std::size_t i) const { return roots_[i]; }
  double min() const { return roots_.front(); }
  double max() const { return roots_.back(); }

  friend bool operator==(const RootVector&, const RootVector&) = default;

 private:
  explicit RootVector(std::vector<double> r) : roots_(std::move(r)) {}
  std::vector<double> roots_;
};

/// Degree, step count, inverse temperature, support bound A and evaluation
/// point z of one flow run.
struct FlowParams {
  std::size_t n = 0;
  std::size_t m = 0;
  InverseTemperature beta = InverseTemperature::infinite();
  double support_bound = 1.0;
  double eval_point = 3.0;

  /// m = floor(n * tau). Requires tau in (0, 1) and z > A + 1.
  static FlowParams from_tau(std::size_t n, double tau, InverseTemperature beta, double support_bound,
                             double eval_point);
  static FlowParams from_steps(std::size_t n, std::size_t m, InverseTemperature beta,
                               double support_bound, double eval_point);
  void validate() const;
};

/// States m = 0..M of one chain. states[m].degree() == states[0].degree() - m.
struct ChainTrajectory {
  std::vector<RootVector> states;
  InverseTemperature beta = InverseTemperature::infinite();
  SeedSpec seed;
};

/// One step of the flow: the d-1 roots of sum_j w_j prod_{k != j} (z - x_k).
///
/// Inputs closer than 1e-12 * (1 + span) are merged into one node carrying
/// the summed weight; a merged node of multiplicity r is re-emitted r-1 times
/// and the remaining roots come from the secular equation between nodes.
RootVector randomized_step(const RootVector& state, const DirichletWeights& weights);

/// Roots of the derivative (randomized_step with uniform weights).
RootVector derivative_step(const RootVector& state);

/// Runs M steps with fresh Dirichlet(beta/2) weights per step drawn from the
/// stream identified by `seed`. Deterministic when beta is infinite.
ChainTrajectory run_chain(const RootVector& initial, std::size_t steps, InverseTemperature beta,
                          SeedSpec seed);

/// Same chain but only the final state is kept (O(n) memory).
RootVector run_chain_final(const RootVector& initial, std::size_t steps, InverseTemperature beta,
                           SeedSpec seed);

/// Roots of the monic-renormalized r-th derivative (r derivative steps).
RootVector iterated_derivative(const RootVector& state, std::size_t r);

/// Zeros of w(x) = sum_i s_i / (x - mu_i), one per open gap (mu_i, mu_{i+1}).
///
/// `nodes` must be strictly increasing and `weights` positive. Each zero is
/// bracketed and refined with a two-pole rational model (matching w and w' at
/// the current iterate) under a bisection safeguard, to 1e-13 of the gap
/// width. Throws NumericError after 200 iterations in one gap.
///
/// For large p, gaps are processed in blocks whose distant nodes are folded
/// into a Taylor expansion about the block centre, so an iterate costs
/// O(block) instead of O(p).
std::vector<double> solve_secular(std::span<const double> nodes, std::span<const double> weights);

namespace detail {
/// Reference path: every iterate sums all nodes directly. O(p) per evaluation.
std::vector<double> solve_secular_direct(std::span<const double> nodes,
                                         std::span<const double> weights);
}  // namespace detail

/// Upper bound on states accepted by xj_values.
inline constexpr std::size_t kMaxXjDegree = 12;

/// The triangular-array weights X_j of a state of degree p at z for depth q:
/// X_j = (q-1)! / (p-1)! * sum over injective (p-q)-tuples avoiding j of
/// prod (z - x_i). Their mean is the renormalized q-th derivative at z, and
/// sum_j w_j X_j is the renormalized (q-1)-th derivative of the stepped
/// polynomial at z.
std::vector<double> xj_values(const RootVector& state, double z, std::size_t q);

/// sum_j log(z - x_j); requires z > max root.
double log_monic_eval(const RootVector& state, double z);

}  // namespace betaflow
