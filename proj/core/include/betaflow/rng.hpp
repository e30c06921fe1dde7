#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace betaflow {

/// Identifies one reproducible random stream: a master seed plus a trial index.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// SplitMix64 finalizer; the mixing primitive behind stream derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Folds a list of integer keys into one stream index, so that e.g.
/// (n, beta-slot, trial) maps to a stable, well-separated stream.
std::uint64_t derive_stream_index(std::initializer_list<std::uint64_t> keys) noexcept;

/// A seeded stream of random numbers. Satisfies UniformRandomBitGenerator and
/// counts how many 64-bit words have been consumed.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(SeedSpec seed);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  result_type operator()() {
    ++position_;
    return engine_();
  }

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal.
  double normal();

  std::uint64_t position() const noexcept { return position_; }
  const SeedSpec& seed() const noexcept { return seed_; }

 private:
  SeedSpec seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  std::uint64_t position_ = 0;
};

/// Inverse temperature beta in [1e-3, inf]. Infinity selects the deterministic
/// derivative flow.
class InverseTemperature {
 public:
  static constexpr double kFloor = 1e-3;

  static InverseTemperature infinite() noexcept { return InverseTemperature(); }
  static InverseTemperature finite(double beta);
  /// Parses "inf"/"infinity"/"Infinite" or a decimal number.
  static InverseTemperature parse(const std::string& text);

  bool is_infinite() const noexcept { return infinite_; }
  /// Finite value; +infinity when is_infinite().
  double value() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }
  /// Dirichlet concentration beta/2 (finite values only).
  double dirichlet_shape() const noexcept { return value_ / 2.0; }
  /// "inf" or the shortest round-trip decimal of the value.
  std::string to_string() const;

  friend bool operator==(const InverseTemperature& a, const InverseTemperature& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  InverseTemperature() = default;
  explicit InverseTemperature(double v) : infinite_(false), value_(v) {}

  bool infinite_ = true;
  double value_ = 0.0;
};

/// Strictly positive weights summing to one.
class DirichletWeights {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Validates positivity and unit sum; throws InvalidParameter otherwise.
  explicit DirichletWeights(std::vector<double> weights);
  static DirichletWeights uniform(std::size_t k);

  std::span<const double> values() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

 private:
  std::vector<double> weights_;
};

inline constexpr double kMinGammaShape = InverseTemperature::kFloor / 2.0;

/// log of a Gamma(shape, 1) draw. Marsaglia-Tsang squeeze for shape >= 1; for
/// shape < 1 the boost Gamma(shape+1) * U^(1/shape), kept in log space so tiny
/// shapes do not underflow.
double log_gamma_sample(double shape, RandomStream& rng);

/// Gamma(shape, 1) draw, floored at the smallest normal double.
double gamma_sample(double shape, RandomStream& rng);

/// Dirichlet(beta/2, ..., beta/2) of length k via normalized Gamma draws, or the
/// exact uniform vector (consuming nothing) when beta is infinite.
DirichletWeights dirichlet_weights(std::size_t k, InverseTemperature beta, RandomStream& rng);

inline constexpr std::size_t kMaxHaarOrder = 512;

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with R's diagonal
/// forced positive.
Eigen::MatrixXd haar_orthogonal(std::size_t n, RandomStream& rng);

/// Haar-distributed unitary matrix: QR of a complex Gaussian matrix with R's
/// diagonal forced real positive.
Eigen::MatrixXcd haar_unitary(std::size_t n, RandomStream& rng);

}  // namespace betaflow
