#include "betaflow/poly_flow.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "betaflow/errors.hpp"

namespace betaflow {

RootVector RootVector::from_unsorted(std::vector<double> roots) {
  for (double r : roots)
    if (!std::isfinite(r)) throw InvalidParameter("roots must be finite");
  std::sort(roots.begin(), roots.end());
  return RootVector(std::move(roots));
}

RootVector RootVector::from_sorted(std::vector<double> roots) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!std::isfinite(roots[i])) throw InvalidParameter("roots must be finite");
    if (i > 0 && roots[i] < roots[i - 1]) throw InvalidParameter("roots must be nondecreasing");
  }
  return RootVector(std::move(roots));
}

FlowParams FlowParams::from_tau(std::size_t n, double tau, InverseTemperature beta,
                                double support_bound, double eval_point) {
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidParameter("tau must lie in (0, 1)");
  auto m = static_cast<std::size_t>(std::floor(static_cast<double>(n) * tau));
  return from_steps(n, m, beta, support_bound, eval_point);
}

FlowParams FlowParams::from_steps(std::size_t n, std::size_t m, InverseTemperature beta,
                                  double support_bound, double eval_point) {
  FlowParams p{n, m, beta, support_bound, eval_point};
  p.validate();
  return p;
}

void FlowParams::validate() const {
  if (n < 1) throw InvalidParameter("degree n must be >= 1");
  if (m > n - 1) throw InvalidParameter("step count m must satisfy m <= n - 1");
  if (!(support_bound > 0.0) || !std::isfinite(support_bound))
    throw InvalidParameter("support bound A must be positive");
  if (!(eval_point > support_bound + 1.0))
    throw DomainError("evaluation point z must exceed A + 1");
}

RootVector randomized_step(const RootVector& state, const DirichletWeights& weights) {
  const std::size_t d = state.degree();
  if (d == 0) throw InvalidParameter("randomized_step needs degree >= 1");
  if (weights.size() != d)
    throw InvalidParameter("randomized_step: " + std::to_string(weights.size()) +
                           " weights for degree " + std::to_string(d));
  if (d == 1) return RootVector{};

  const auto x = state.roots();
  const auto rho = weights.values();
  const double eps = 1e-12 * (1.0 + (x.back() - x.front()));

  // Cluster near-coincident inputs; each cluster is anchored at its first member.
  std::vector<double> nodes;
  std::vector<double> node_weights;
  std::vector<std::size_t> multiplicity;
  nodes.reserve(d);
  node_weights.reserve(d);
  multiplicity.reserve(d);
  for (std::size_t i = 0; i < d;) {
    std::size_t k = i;
    double wsum = 0.0;
    while (k < d && x[k] - x[i] <= eps) wsum += rho[k++];
    nodes.push_back(x[i]);
    node_weights.push_back(wsum);
    multiplicity.push_back(k - i);
    i = k;
  }

  std::vector<double> between;
  if (nodes.size() >= 2) between = solve_secular(nodes, node_weights);

  std::vector<double> out;
  out.reserve(d - 1);
  for (std::size_t c = 0; c < nodes.size(); ++c) {
    out.insert(out.end(), multiplicity[c] - 1, nodes[c]);
    if (c < between.size()) out.push_back(between[c]);
  }
  return RootVector::from_sorted(std::move(out));
}

RootVector derivative_step(const RootVector& state) {
  if (state.degree() == 0) throw InvalidParameter("derivative_step needs degree >= 1");
  return randomized_step(state, DirichletWeights::uniform(state.degree()));
}

ChainTrajectory run_chain(const RootVector& initial, std::size_t steps, InverseTemperature beta,
                          SeedSpec seed) {
  if (steps > initial.degree())
    throw InvalidParameter("run_chain: more steps than the initial degree");
  ChainTrajectory traj;
  traj.beta = beta;
  traj.seed = seed;
  traj.states.reserve(steps + 1);
  traj.states.push_back(initial);
  RandomStream rng(seed);
  for (std::size_t m = 1; m <= steps; ++m) {
    const auto& prev = traj.states.back();
    auto w = dirichlet_weights(prev.degree(), beta, rng);
    traj.states.push_back(randomized_step(prev, w));
  }
  return traj;
}

RootVector run_chain_final(const RootVector& initial, std::size_t steps, InverseTemperature beta,
                           SeedSpec seed) {
  if (steps > initial.degree())
    throw InvalidParameter("run_chain: more steps than the initial degree");
  RootVector state = initial;
  RandomStream rng(seed);
  for (std::size_t m = 1; m <= steps; ++m) {
    auto w = dirichlet_weights(state.degree(), beta, rng);
    state = randomized_step(state, w);
  }
  return state;
}

RootVector iterated_derivative(const RootVector& state, std::size_t r) {
  if (r > state.degree())
    throw InvalidParameter("iterated_derivative: order " + std::to_string(r) +
                           " exceeds degree " + std::to_string(state.degree()));
  RootVector out = state;
  for (std::size_t i = 0; i < r; ++i) out = derivative_step(out);
  return out;
}

std::vector<double> xj_values(const RootVector& state, double z, std::size_t q) {
  const std::size_t p = state.degree();
  if (p > kMaxXjDegree) throw InvalidParameter("xj_values: degree above brute-force cap of 12");
  if (q < 1 || q > p) throw InvalidParameter("xj_values: need 1 <= q <= degree");
  if (!(z > state.max())) throw DomainError("xj_values: z must exceed every root");

  const std::size_t len = p - q;
  std::vector<double> y(p);
  for (std::size_t i = 0; i < p; ++i) y[i] = z - state[i];

  // Ordered injective tuples of length len from p-1 indices are len! copies of
  // each subset, so the prefactor (q-1)! len! / (p-1)! is 1 / C(p-1, len).
  double binom = 1.0;
  for (std::size_t i = 1; i <= len; ++i)
    binom = binom * static_cast<double>(p - 1 - len + i) / static_cast<double>(i);

  std::vector<double> x(p, 0.0);
  const unsigned full = 1u << p;
  for (std::size_t j = 0; j < p; ++j) {
    double sum = 0.0;
    for (unsigned mask = 0; mask < full; ++mask) {
      if ((mask >> j) & 1u) continue;
      if (static_cast<std::size_t>(std::popcount(mask)) != len) continue;
      double prod = 1.0;
      for (std::size_t i = 0; i < p; ++i)
        if ((mask >> i) & 1u) prod *= y[i];
      sum += prod;
    }
    x[j] = sum / binom;
  }
  return x;
}

double log_monic_eval(const RootVector& state, double z) {
  if (state.empty()) return 0.0;
  if (!(z > state.max())) throw DomainError("log_monic_eval: z must exceed every root");
  double acc = 0.0;
  for (double r : state.roots()) acc += std::log(z - r);
  return acc;
}

}  // namespace betaflow
