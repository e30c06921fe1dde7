#include "betaflow/rng.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>

#include <Eigen/QR>

#include "betaflow/errors.hpp"

namespace betaflow {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_index(std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (auto k : keys) h = mix64(h ^ mix64(k));
  return h;
}

namespace {

std::mt19937_64 make_engine(SeedSpec seed) {
  // Four words from the SplitMix chain over (master, stream) feed seed_seq.
  std::uint64_t s = mix64(seed.master_seed) ^ mix64(~seed.stream_index + 0x632be59bd9b4e019ULL);
  std::array<std::uint32_t, 8> words{};
  for (std::size_t i = 0; i < words.size(); i += 2) {
    s = mix64(s);
    words[i] = static_cast<std::uint32_t>(s);
    words[i + 1] = static_cast<std::uint32_t>(s >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(SeedSpec seed) : seed_(seed), engine_(make_engine(seed)) {}

double RandomStream::uniform() {
  // 53 random bits centred in their cell: never 0, never 1.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() { return normal_(*this); }

InverseTemperature InverseTemperature::finite(double beta) {
  if (!(beta >= kFloor) || !std::isfinite(beta)) {
    throw InvalidParameter("inverse temperature must be finite and >= 1e-3, got " +
                           std::to_string(beta));
  }
  return InverseTemperature(beta);
}

InverseTemperature InverseTemperature::parse(const std::string& text) {
  std::string t;
  std::transform(text.begin(), text.end(), std::back_inserter(t),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "inf" || t == "infinity" || t == "infinite" || t == "+inf") return infinite();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw InvalidParameter("cannot parse inverse temperature '" + text + "'");
  }
  return finite(v);
}

std::string InverseTemperature::to_string() const {
  if (infinite_) return "inf";
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value_);
  return std::string(buf.data(), ptr);
}

DirichletWeights::DirichletWeights(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InvalidParameter("Dirichlet weights must be non-empty");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidParameter("Dirichlet weights must be strictly positive and finite");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw InvalidParameter("Dirichlet weights must sum to 1 (sum = " + std::to_string(sum) + ")");
  }
}

DirichletWeights DirichletWeights::uniform(std::size_t k) {
  if (k == 0) throw InvalidParameter("Dirichlet weights must be non-empty");
  return DirichletWeights(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

double log_gamma_sample(double shape, RandomStream& rng) {
  if (!(shape >= kMinGammaShape) || !std::isfinite(shape)) {
    throw InvalidParameter("gamma shape must be >= 5e-4, got " + std::to_string(shape));
  }
  double log_boost = 0.0;
  double a = shape;
  if (a < 1.0) {
    log_boost = std::log(rng.uniform()) / a;
    a += 1.0;
  }
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2 ||
        std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return std::log(d * v) + log_boost;
    }
  }
}

double gamma_sample(double shape, RandomStream& rng) {
  return std::max(std::exp(log_gamma_sample(shape, rng)), std::numeric_limits<double>::min());
}

DirichletWeights dirichlet_weights(std::size_t k, InverseTemperature beta, RandomStream& rng) {
  if (k == 0) throw InvalidParameter("dirichlet_weights needs k >= 1");
  if (beta.is_infinite()) return DirichletWeights::uniform(k);

  constexpr int kMaxAttempts = 8;
  const double shape = beta.dirichlet_shape();
  std::vector<double> logs(k);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    for (auto& l : logs) l = log_gamma_sample(shape, rng);
    const double top = *std::max_element(logs.begin(), logs.end());
    double scale = 0.0;
    for (double l : logs) scale += std::exp(l - top);
    if (!std::isfinite(top) || !std::isfinite(scale) || !(scale >= 1.0)) continue;

    std::vector<double> w(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      // Coordinates below the normal range are floored; they are < 1e-300 and
      // do not move the unit sum.
      w[i] = std::max(std::exp(logs[i] - top) / scale, std::numeric_limits<double>::min());
      sum += w[i];
    }
    if (std::abs(sum - 1.0) > DirichletWeights::kSumTolerance) continue;
    return DirichletWeights(std::move(w));
  }
  throw NumericError("Dirichlet normalization degenerate after 8 attempts", shape);
}

namespace {

void check_haar_order(std::size_t n) {
  if (n < 1 || n > kMaxHaarOrder) {
    throw InvalidParameter("Haar order must be in [1, 512], got " + std::to_string(n));
  }
}

}  // namespace

Eigen::MatrixXd haar_orthogonal(std::size_t n, RandomStream& rng) {
  check_haar_order(n);
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = rng.normal();

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

Eigen::MatrixXcd haar_unitary(std::size_t n, RandomStream& rng) {
  check_haar_order(n);
  const auto dim = static_cast<Eigen::Index>(n);
  const double s = std::sqrt(0.5);
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = {s * re, s * im};
    }

  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace betaflow
