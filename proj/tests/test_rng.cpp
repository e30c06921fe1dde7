#include <gtest/gtest.h>

#include <thread>

#include "betaflow/errors.hpp"
#include "betaflow/rng.hpp"
#include "oracles.hpp"

using namespace betaflow;

namespace {

std::vector<double> gamma_draws(double shape, std::size_t count, std::uint64_t stream) {
  RandomStream rng({7, stream});
  std::vector<double> xs(count);
  for (auto& x : xs) x = gamma_sample(shape, rng);
  return xs;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(RandomStream, SameSeedSameSequence) {
  RandomStream a({42, 3}), b({42, 3});
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
  EXPECT_EQ(a.position(), 1000u);
}

TEST(RandomStream, DistinctStreamsDiffer) {
  RandomStream a({42, 3}), b({42, 4}), c({43, 3});
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a(), y = b(), z = c();
    same_ab += x == y;
    same_ac += x == z;
  }
  EXPECT_EQ(same_ab, 0);
  EXPECT_EQ(same_ac, 0);
}

TEST(RandomStream, IndependentOfThreadPlacement) {
  std::vector<std::uint64_t> serial(4), threaded(4);
  for (std::size_t t = 0; t < 4; ++t) {
    RandomStream r({1, t});
    for (int i = 0; i < 10; ++i) r();
    serial[t] = r();
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      RandomStream r({1, t});
      for (int i = 0; i < 10; ++i) r();
      threaded[t] = r();
    });
  for (auto& th : pool) th.join();
  EXPECT_EQ(serial, threaded);
}

TEST(RandomStream, UniformInOpenUnitInterval) {
  RandomStream r({5, 0});
  std::vector<double> xs(100000);
  for (auto& x : xs) {
    x = r.uniform();
    ASSERT_GT(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
  EXPECT_LT(oracle::ks_one_sample(xs, [](double x) { return oracle::uniform_cdf(x, 0, 1); }), 0.01);
}

TEST(StreamDerivation, KeyOrderMatters) {
  EXPECT_NE(derive_stream_index({1, 2}), derive_stream_index({2, 1}));
  EXPECT_EQ(derive_stream_index({1, 2, 3}), derive_stream_index({1, 2, 3}));
  EXPECT_NE(mix64(0), mix64(1));
}

TEST(InverseTemperature, FloorAndParsing) {
  EXPECT_THROW(InverseTemperature::finite(1e-4), InvalidParameter);
  EXPECT_THROW(InverseTemperature::finite(-1.0), InvalidParameter);
  EXPECT_THROW(InverseTemperature::finite(std::nan("")), InvalidParameter);
  EXPECT_NO_THROW(InverseTemperature::finite(1e-3));
  EXPECT_TRUE(InverseTemperature::parse("inf").is_infinite());
  EXPECT_TRUE(InverseTemperature::parse("Infinite").is_infinite());
  EXPECT_DOUBLE_EQ(InverseTemperature::parse("2.5").value(), 2.5);
  EXPECT_THROW(InverseTemperature::parse("abc"), InvalidParameter);
  EXPECT_THROW(InverseTemperature::parse("0.0001"), InvalidParameter);
  EXPECT_EQ(InverseTemperature::finite(2).to_string(), "2");
  EXPECT_EQ(InverseTemperature::infinite().to_string(), "inf");
  EXPECT_DOUBLE_EQ(InverseTemperature::finite(3).dirichlet_shape(), 1.5);
}

TEST(DirichletWeights, ValidatesInvariants) {
  EXPECT_THROW(DirichletWeights({0.5, 0.6}), InvalidParameter);
  EXPECT_THROW(DirichletWeights({1.0, 0.0}), InvalidParameter);
  EXPECT_THROW(DirichletWeights({}), InvalidParameter);
  EXPECT_NO_THROW(DirichletWeights({0.25, 0.75}));
  const auto u = DirichletWeights::uniform(4);
  for (double w : u.values()) EXPECT_DOUBLE_EQ(w, 0.25);
}

TEST(GammaSample, MeanShapeTwo) {
  EXPECT_NEAR(oracle::mean(gamma_draws(2.0, 100000, 1)), 2.0, 0.05);
}

TEST(GammaSample, MeanShapeHalf) {
  EXPECT_NEAR(oracle::mean(gamma_draws(0.5, 100000, 2)), 0.5, 0.02);
}

TEST(GammaSample, VarianceShapeOne) {
  EXPECT_NEAR(oracle::variance(gamma_draws(1.0, 100000, 3)), 1.0, 0.1);
}

TEST(GammaSample, ShapeOneIsExponential) {
  auto xs = gamma_draws(1.0, 20000, 4);
  EXPECT_LT(oracle::ks_one_sample(xs, [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x); }), 0.015);
}

TEST(GammaSample, TinyShapeStaysPositive) {
  RandomStream rng({9, 0});
  for (int i = 0; i < 10000; ++i) {
    ASSERT_GT(gamma_sample(kMinGammaShape, rng), 0.0);
    ASSERT_TRUE(std::isfinite(log_gamma_sample(kMinGammaShape, rng)));
  }
}

TEST(GammaSample, RejectsShapeBelowFloor) {
  RandomStream rng({9, 0});
  EXPECT_THROW(gamma_sample(1e-4, rng), InvalidParameter);
  EXPECT_THROW(gamma_sample(0.0, rng), InvalidParameter);
}

TEST(DirichletSample, InfiniteBetaIsUniformWithoutConsumption) {
  RandomStream rng({1, 1});
  const auto w = dirichlet_weights(3, InverseTemperature::infinite(), rng);
  EXPECT_EQ(rng.position(), 0u);
  for (double x : w.values()) EXPECT_DOUBLE_EQ(x, 1.0 / 3.0);
}

TEST(DirichletSample, BetaTwoMarginalIsUniform) {
  RandomStream rng({11, 0});
  std::vector<double> first(100000);
  for (auto& x : first) x = dirichlet_weights(2, InverseTemperature::finite(2), rng)[0];
  EXPECT_LT(oracle::ks_one_sample(first, [](double x) { return oracle::uniform_cdf(x, 0, 1); }), 0.02);
}

TEST(DirichletSample, BetaOneCoordinateMeans) {
  RandomStream rng({12, 0});
  std::vector<double> sums(5, 0.0);
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const auto w = dirichlet_weights(5, InverseTemperature::finite(1), rng);
    for (std::size_t j = 0; j < 5; ++j) sums[j] += w[j];
  }
  for (double s : sums) EXPECT_NEAR(s / kDraws, 0.2, 0.01);
}

TEST(DirichletSample, InvariantsHoldAcrossBetas) {
  RandomStream rng({13, 0});
  for (double b : {1e-3, 0.01, 0.5, 1.0, 2.0, 10.0, 1000.0}) {
    for (std::size_t k : {1u, 2u, 7u, 50u}) {
      const auto w = dirichlet_weights(k, InverseTemperature::finite(b), rng);
      double s = 0.0;
      for (double x : w.values()) {
        ASSERT_GT(x, 0.0);
        s += x;
      }
      ASSERT_NEAR(s, 1.0, 1e-12) << "beta " << b << " k " << k;
    }
  }
}

TEST(DirichletSample, Reproducible) {
  RandomStream a({3, 3}), b({3, 3});
  for (int i = 0; i < 50; ++i) {
    const auto wa = dirichlet_weights(6, InverseTemperature::finite(1.5), a);
    const auto wb = dirichlet_weights(6, InverseTemperature::finite(1.5), b);
    ASSERT_TRUE(std::equal(wa.values().begin(), wa.values().end(), wb.values().begin()));
  }
}

TEST(HaarOrthogonal, OrderOneIsFairSign) {
  RandomStream rng({21, 0});
  int plus = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto q = haar_orthogonal(1, rng);
    ASSERT_EQ(std::abs(q(0, 0)), 1.0);
    plus += q(0, 0) > 0;
  }
  EXPECT_NEAR(plus / 10000.0, 0.5, 0.02);
}

TEST(HaarOrthogonal, Orthogonality) {
  RandomStream rng({22, 0});
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = i < 50 ? 8 : 64;
    const auto q = haar_orthogonal(n, rng);
    ASSERT_LT(max_abs(q.transpose() * q - Eigen::MatrixXd::Identity(q.rows(), q.cols())), 1e-12);
  }
}

TEST(HaarOrthogonal, LastColumnFirstEntryMean) {
  RandomStream rng({23, 0});
  double s = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const auto q = haar_orthogonal(3, rng);
    s += q(0, 2) * q(0, 2);
  }
  EXPECT_NEAR(s / 100000.0, 1.0 / 3.0, 0.01);
}

TEST(HaarOrthogonal, SizeGuard) {
  RandomStream rng({1, 0});
  EXPECT_THROW(haar_orthogonal(0, rng), InvalidParameter);
  EXPECT_THROW(haar_orthogonal(513, rng), InvalidParameter);
}

TEST(HaarUnitary, Unitarity) {
  RandomStream rng({24, 0});
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = i < 50 ? 8 : 64;
    const auto u = haar_unitary(n, rng);
    const Eigen::MatrixXcd dev = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    ASSERT_LT(dev.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(HaarUnitary, OffDiagonalModulusIsUniformForOrderTwo) {
  RandomStream rng({25, 0});
  std::vector<double> xs(100000);
  for (auto& x : xs) x = std::norm(haar_unitary(2, rng)(0, 1));
  EXPECT_LT(oracle::ks_one_sample(xs, [](double x) { return oracle::uniform_cdf(x, 0, 1); }), 0.02);
}

TEST(HaarUnitary, OrderOneHasUniformPhase) {
  RandomStream rng({26, 0});
  double s = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const auto u = haar_unitary(1, rng);
    ASSERT_NEAR(std::abs(u(0, 0)), 1.0, 1e-15);
    s += u(0, 0).real();
  }
  EXPECT_NEAR(s / 100000.0, 0.0, 0.01);
}

TEST(HaarUnitary, SizeGuard) {
  RandomStream rng({1, 0});
  EXPECT_THROW(haar_unitary(0, rng), InvalidParameter);
  EXPECT_THROW(haar_unitary(513, rng), InvalidParameter);
}
