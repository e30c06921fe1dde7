#include <gtest/gtest.h>

#include "betaflow/errors.hpp"
#include "betaflow/measure.hpp"
#include "betaflow/poly_flow.hpp"
#include "oracles.hpp"

using namespace betaflow;

namespace {

RootVector rv(std::vector<double> r) { return RootVector::from_unsorted(std::move(r)); }

std::vector<double> vec(const RootVector& r) { return {r.roots().begin(), r.roots().end()}; }

RootVector random_state(RandomStream& rng, std::size_t d, double spread = 2.0) {
  std::vector<double> x(d);
  for (auto& v : x) v = spread * (2.0 * rng.uniform() - 1.0);
  return rv(x);
}

}  // namespace

TEST(RootVector, SortsAndValidates) {
  const auto r = rv({3.0, -1.0, 2.0});
  EXPECT_EQ(vec(r), (std::vector<double>{-1.0, 2.0, 3.0}));
  EXPECT_THROW(RootVector::from_unsorted({1.0, std::nan("")}), InvalidParameter);
  EXPECT_THROW(RootVector::from_sorted({2.0, 1.0}), InvalidParameter);
  EXPECT_TRUE(RootVector().empty());
}

TEST(FlowParams, StepsAndEvalPoint) {
  const auto p = FlowParams::from_tau(1000, 0.5, InverseTemperature::finite(2), 1.0, 3.0);
  EXPECT_EQ(p.m, 500u);
  EXPECT_EQ(FlowParams::from_tau(7, 0.5, InverseTemperature::infinite(), 1.0, 3.0).m, 3u);
  EXPECT_THROW(FlowParams::from_tau(10, 1.2, InverseTemperature::infinite(), 1.0, 3.0), InvalidParameter);
  EXPECT_THROW(FlowParams::from_tau(10, 0.5, InverseTemperature::infinite(), 1.0, 2.0), DomainError);
  EXPECT_THROW(FlowParams::from_steps(10, 10, InverseTemperature::infinite(), 1.0, 3.0), InvalidParameter);
}

TEST(RandomizedStep, LinearCases) {
  EXPECT_EQ(vec(randomized_step(rv({-1, 1}), DirichletWeights({0.5, 0.5}))), (std::vector<double>{0.0}));
  const auto r = randomized_step(rv({-1, 1}), DirichletWeights({0.25, 0.75}));
  EXPECT_NEAR(r[0], -0.5, 1e-15);
}

TEST(RandomizedStep, CubicUniformWeights) {
  const double third = 1.0 / 3.0;
  const auto r = randomized_step(rv({0, 1, 2}), DirichletWeights({third, third, 1.0 - 2 * third}));
  const auto [a, b] = oracle::quadratic(3, -6, 2);
  ASSERT_EQ(r.degree(), 2u);
  EXPECT_NEAR(r[0], a, 1e-14);
  EXPECT_NEAR(r[1], b, 1e-14);
}

TEST(RandomizedStep, LengthMismatchThrows) {
  EXPECT_THROW(randomized_step(rv({0, 1, 2}), DirichletWeights({0.5, 0.5})), InvalidParameter);
}

TEST(RandomizedStep, DegreeOneGivesEmpty) {
  EXPECT_TRUE(randomized_step(rv({4.2}), DirichletWeights({1.0})).empty());
}

TEST(RandomizedStep, MatchesCoefficientOracle) {
  RandomStream rng({100, 0});
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t d = 2 + inst % 7;
    const auto state = random_state(rng, d);
    const auto w = dirichlet_weights(d, InverseTemperature::finite(2), rng);
    const auto got = randomized_step(state, w);
    const auto expect = oracle::real_roots(
        oracle::weighted_lagrange(vec(state), std::vector<double>(w.values().begin(), w.values().end())));
    ASSERT_EQ(got.degree(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_NEAR(got[i], expect[i], 1e-7) << "instance " << inst;
  }
}

TEST(RandomizedStep, StrictInterlacingAndSupport) {
  RandomStream rng({101, 0});
  for (int inst = 0; inst < 300; ++inst) {
    const std::size_t d = 2 + inst % 40;
    const auto state = random_state(rng, d, 5.0);
    const auto w = dirichlet_weights(d, InverseTemperature::finite(0.5 + inst % 4), rng);
    const auto out = randomized_step(state, w);
    ASSERT_TRUE(check_interlacing(state, out, true)) << "instance " << inst;
    ASSERT_GE(out.min(), state.min());
    ASSERT_LE(out.max(), state.max());
  }
}

TEST(RandomizedStep, VietaSumIdentity) {
  RandomStream rng({102, 0});
  for (int inst = 0; inst < 300; ++inst) {
    const std::size_t d = 2 + inst % 60;
    const auto state = random_state(rng, d, 3.0);
    const auto w = dirichlet_weights(d, InverseTemperature::finite(1), rng);
    const auto out = randomized_step(state, w);
    double in = 0, outs = 0, weighted = 0, max_abs = 0;
    for (std::size_t j = 0; j < d; ++j) {
      in += state[j];
      weighted += w[j] * state[j];
      max_abs = std::max(max_abs, std::abs(state[j]));
    }
    for (double x : out.roots()) outs += x;
    ASSERT_LE(std::abs(outs - (in - weighted)), 1e-9 * (1 + max_abs) * d);
  }
}

TEST(RandomizedStep, MultiplicityRule) {
  RandomStream rng({103, 0});
  const auto state = rv({-2, -2, -2, 0.5, 1, 1, 3});
  for (int rep = 0; rep < 50; ++rep) {
    const auto out = randomized_step(state, dirichlet_weights(7, InverseTemperature::finite(1), rng));
    const auto r = vec(out);
    EXPECT_EQ(std::count(r.begin(), r.end(), -2.0), 2);
    EXPECT_EQ(std::count(r.begin(), r.end(), 1.0), 1);
    EXPECT_EQ(std::count(r.begin(), r.end(), 0.5), 0);
    EXPECT_EQ(r.size(), 6u);
    EXPECT_TRUE(check_interlacing(state, out));
  }
}

TEST(RandomizedStep, AllCoincident) {
  const auto out = randomized_step(rv({1.5, 1.5, 1.5, 1.5}), DirichletWeights({0.1, 0.2, 0.3, 0.4}));
  EXPECT_EQ(vec(out), (std::vector<double>{1.5, 1.5, 1.5}));
}

TEST(RandomizedStep, ExtremeWeights) {
  // beta at the floor: weights spanning hundreds of orders of magnitude
  RandomStream rng({104, 0});
  for (int rep = 0; rep < 200; ++rep) {
    const auto state = random_state(rng, 20);
    const auto out = randomized_step(state, dirichlet_weights(20, InverseTemperature::finite(1e-3), rng));
    ASSERT_TRUE(check_interlacing(state, out));
  }
}

TEST(DerivativeStep, Examples) {
  const auto r = derivative_step(rv({-1, 0, 1}));
  EXPECT_NEAR(r[0], -1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r[1], 1 / std::sqrt(3.0), 1e-15);
  EXPECT_TRUE(derivative_step(rv({7.0})).empty());
  EXPECT_EQ(vec(derivative_step(rv({2.5, 2.5}))), (std::vector<double>{2.5}));
}

TEST(DerivativeStep, MatchesCoefficientDerivative) {
  RandomStream rng({105, 0});
  for (int inst = 0; inst < 100; ++inst) {
    const auto state = random_state(rng, 2 + inst % 8);
    const auto expect = oracle::real_roots(oracle::derivative(oracle::poly_from_roots(vec(state))));
    const auto got = derivative_step(state);
    for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_NEAR(got[i], expect[i], 1e-7);
  }
}

TEST(RunChain, InfiniteBetaIsIteratedDerivative) {
  const auto t = run_chain(rv({-1, 1}), 2, InverseTemperature::infinite(), {1, 1});
  ASSERT_EQ(t.states.size(), 3u);
  EXPECT_EQ(vec(t.states[1]), (std::vector<double>{0.0}));
  EXPECT_TRUE(t.states[2].empty());
}

TEST(RunChain, FullDepthEndsEmpty) {
  const auto t = run_chain(rv({0, 1, 3, 4, 9}), 5, InverseTemperature::finite(2), {1, 2});
  EXPECT_TRUE(t.states.back().empty());
  for (std::size_t m = 0; m < t.states.size(); ++m) EXPECT_EQ(t.states[m].degree(), 5 - m);
  EXPECT_THROW(run_chain(rv({0, 1}), 3, InverseTemperature::infinite(), {}), InvalidParameter);
}

TEST(RunChain, OneStepAgainstQuadraticFormula) {
  const SeedSpec seed{42, 0};
  const auto t = run_chain(rv({0, 1, 2}), 1, InverseTemperature::finite(2), seed);
  RandomStream rng(seed);
  const auto w = dirichlet_weights(3, InverseTemperature::finite(2), rng);
  const auto c = oracle::weighted_lagrange({0, 1, 2}, {w[0], w[1], w[2]});
  const auto [a, b] = oracle::quadratic(c[2], c[1], c[0]);
  const auto& s = t.states[1];
  EXPECT_NEAR(s[0], a, 1e-12);
  EXPECT_NEAR(s[1], b, 1e-12);
  EXPECT_GT(s[0], 0.0);
  EXPECT_LT(s[0], 1.0);
  EXPECT_GT(s[1], 1.0);
  EXPECT_LT(s[1], 2.0);
}

TEST(RunChain, DeterministicAtInfiniteBetaAcrossSeeds) {
  const auto init = rv({-3, -1, 0.2, 0.5, 2, 4});
  const auto a = run_chain(init, 4, InverseTemperature::infinite(), {1, 1});
  const auto b = run_chain(init, 4, InverseTemperature::infinite(), {99, 7});
  EXPECT_EQ(a.states, b.states);
}

TEST(RunChain, FinalMatchesTrajectory) {
  const auto init = rv({-3, -1, 0.2, 0.5, 2, 4, 4.5, 6});
  const auto t = run_chain(init, 5, InverseTemperature::finite(1.3), {5, 5});
  EXPECT_EQ(run_chain_final(init, 5, InverseTemperature::finite(1.3), {5, 5}), t.states.back());
}

TEST(RunChain, ConsecutiveStatesInterlace) {
  std::vector<double> x(300);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = -1.0 + (2.0 * i + 1) / 300.0;
  const auto t = run_chain(rv(x), 150, InverseTemperature::finite(1), {8, 8});
  for (std::size_t m = 1; m < t.states.size(); ++m) ASSERT_TRUE(check_interlacing(t.states[m - 1], t.states[m]));
}

TEST(IteratedDerivative, Examples) {
  EXPECT_NEAR(iterated_derivative(rv({0, 1, 2}), 2)[0], 1.0, 1e-15);
  const auto s = rv({-2, 0.5, 3});
  EXPECT_EQ(iterated_derivative(s, 0), s);
  EXPECT_EQ(vec(iterated_derivative(rv({-1, 1}), 1)), (std::vector<double>{0.0}));
  EXPECT_THROW(iterated_derivative(s, 4), InvalidParameter);
}

TEST(XjValues, Examples) {
  const auto x = xj_values(rv({0, 1, 2}), 3.0, 2);
  ASSERT_EQ(x.size(), 3u);
  EXPECT_NEAR(x[0], 1.5, 1e-15);
  EXPECT_NEAR(x[1], 2.0, 1e-15);
  EXPECT_NEAR(x[2], 2.5, 1e-15);

  const auto y = xj_values(rv({-0.5, 1.25}), 4.0, 1);
  EXPECT_NEAR(y[0], 4.0 - 1.25, 1e-15);
  EXPECT_NEAR(y[1], 4.0 + 0.5, 1e-15);

  for (double v : xj_values(rv({0.1, 0.2, 0.7, 0.9}), 2.0, 4)) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(XjValues, MatchesTupleEnumeration) {
  RandomStream rng({106, 0});
  for (std::size_t p = 1; p <= 7; ++p) {
    for (std::size_t q = 1; q <= p; ++q) {
      const auto s = random_state(rng, p);
      const double z = s.max() + 0.3 + rng.uniform();
      const auto got = xj_values(s, z, q);
      const auto expect = oracle::xj_by_tuples(vec(s), z, q);
      for (std::size_t j = 0; j < p; ++j) ASSERT_NEAR(got[j], expect[j], 1e-12 * std::abs(expect[j]));
    }
  }
}

TEST(XjValues, IdentitiesAgainstFlow) {
  RandomStream rng({107, 0});
  for (std::size_t p = 2; p <= 8; ++p) {
    for (std::size_t q = 1; q <= p; ++q) {
      for (int rep = 0; rep < 10; ++rep) {
        const auto s = random_state(rng, p, 1.0);
        const double z = s.max() + 0.5 + 2 * rng.uniform();
        const auto w = dirichlet_weights(p, InverseTemperature::finite(1), rng);
        const auto x = xj_values(s, z, q);
        double mean = 0, weighted = 0;
        for (std::size_t j = 0; j < p; ++j) {
          mean += x[j] / p;
          weighted += w[j] * x[j];
        }
        const double a = std::exp(log_monic_eval(iterated_derivative(s, q), z));
        const double b = std::exp(log_monic_eval(iterated_derivative(randomized_step(s, w), q - 1), z));
        ASSERT_NEAR(mean, a, 1e-10 * a);
        ASSERT_NEAR(weighted, b, 1e-10 * b);
      }
    }
  }
}

TEST(XjValues, Preconditions) {
  std::vector<double> big(13);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<double>(i);
  EXPECT_THROW(xj_values(rv(big), 20.0, 2), InvalidParameter);
  EXPECT_THROW(xj_values(rv({0, 1}), 3.0, 0), InvalidParameter);
  EXPECT_THROW(xj_values(rv({0, 1}), 3.0, 3), InvalidParameter);
  EXPECT_THROW(xj_values(rv({0, 1}), 0.5, 1), DomainError);
}

TEST(LogMonicEval, Examples) {
  EXPECT_NEAR(log_monic_eval(rv({-1, 1}), 3.0), std::log(8.0), 1e-15);
  EXPECT_EQ(log_monic_eval(RootVector(), 5.0), 0.0);
  EXPECT_NEAR(log_monic_eval(rv({0, 0, 0}), 2.0), 3 * std::log(2.0), 1e-15);
  EXPECT_THROW(log_monic_eval(rv({0, 1}), 1.0), DomainError);
  EXPECT_THROW(log_monic_eval(rv({0, 1}), 0.5), DomainError);
}

TEST(LogMonicEval, MatchesCoefficientEvaluation) {
  RandomStream rng({108, 0});
  for (int rep = 0; rep < 50; ++rep) {
    const auto s = random_state(rng, 6);
    const double z = s.max() + 0.1 + rng.uniform();
    EXPECT_NEAR(log_monic_eval(s, z), std::log(oracle::eval(oracle::poly_from_roots(vec(s)), z)), 1e-11);
  }
}
