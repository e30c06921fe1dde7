#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "betaflow/errors.hpp"
#include "betaflow/poly_flow.hpp"

namespace betaflow {

namespace {

constexpr double kGapTolerance = 1e-13;
constexpr int kMaxIterations = 200;

// Gaps are solved in blocks. Nodes farther than kFarRatio block half-widths
// from the block centre enter through a kFarTerms-term Taylor expansion about
// the centre; the truncation error is below 4^-27 ~ 6e-17 of their absolute
// contribution. Nearer nodes are summed directly at every iterate.
constexpr std::size_t kBlockGaps = 16;
constexpr double kFarRatio = 4.0;
constexpr std::size_t kFarTerms = 27;
constexpr std::size_t kDirectBelow = 96;

// Partial sums of w and |w'| split at the gap: nodes left of the evaluation
// point and nodes right of it. The point is origin + t.
struct Partials {
  double left = 0.0;    // > 0
  double dleft = 0.0;   // sum s/(x-mu)^2 over left nodes
  double right = 0.0;   // < 0
  double dright = 0.0;
};

void accumulate(const double* mu, const double* s, std::size_t begin, std::size_t end,
                double origin, double t, double& sum, double& dsum) {
  double acc = 0.0, dacc = 0.0;
#pragma omp simd reduction(+ : acc, dacc)
  for (std::size_t j = begin; j < end; ++j) {
    const double r = 1.0 / ((origin - mu[j]) + t);
    const double sr = s[j] * r;
    acc += sr;
    dacc += sr * r;
  }
  sum += acc;
  dsum += dacc;
}

// Far-field moments m_k = sum_j s_j u_j^(k+1), u_j = radius / (centre - mu_j),
// |u_j| < 1. A side's far sum at x is (1/radius) sum_k m_k y^k with
// y = (centre - x) / radius, and its |derivative| is
// (1/radius^2) sum_k (k+1) m_(k+1) y^k.
struct FarField {
  double centre = 0.0;
  double radius = 1.0;
  // value and derivative coefficients, left and right sides
  std::array<double, kFarTerms> left{}, dleft{}, right{}, dright{};

  static void moments(const double* mu, const double* s, std::size_t begin, std::size_t end,
                      double centre, double radius, std::vector<double>& scratch_u,
                      std::vector<double>& scratch_v, std::array<double, kFarTerms>& val,
                      std::array<double, kFarTerms>& der) {
    val.fill(0.0);
    der.fill(0.0);
    const std::size_t len = end - begin;
    if (len == 0) return;
    scratch_u.resize(len);
    scratch_v.resize(len);
    double* u = scratch_u.data();
    double* v = scratch_v.data();
#pragma omp simd
    for (std::size_t j = 0; j < len; ++j) {
      u[j] = radius / (centre - mu[begin + j]);
      v[j] = s[begin + j] * u[j];
    }
    for (std::size_t k = 0; k < kFarTerms; ++k) {
      double acc = 0.0;
#pragma omp simd reduction(+ : acc)
      for (std::size_t j = 0; j < len; ++j) {
        acc += v[j];
        v[j] *= u[j];
      }
      val[k] = acc;
    }
    for (std::size_t k = 0; k + 1 < kFarTerms; ++k)
      der[k] = static_cast<double>(k + 1) * val[k + 1];
  }

  // Adds both sides' far contributions at x = origin + t.
  void eval(double origin, double t, Partials& f) const {
    const double y = ((centre - origin) - t) / radius;
    std::array<double, kFarTerms> pw;
    pw[0] = 1.0;
    pw[1] = y;
    pw[2] = y * y;
    pw[3] = pw[2] * y;
    const double y4 = pw[2] * pw[2];
    for (std::size_t k = 4; k < kFarTerms; ++k) pw[k] = pw[k - 4] * y4;

    double lv = 0.0, ld = 0.0, rv = 0.0, rd = 0.0;
#pragma omp simd reduction(+ : lv, ld, rv, rd)
    for (std::size_t k = 0; k < kFarTerms; ++k) {
      lv += left[k] * pw[k];
      ld += dleft[k] * pw[k];
      rv += right[k] * pw[k];
      rd += dright[k] * pw[k];
    }
    const double inv = 1.0 / radius;
    f.left += lv * inv;
    f.right += rv * inv;
    f.dleft += ld * inv * inv;
    f.dright += rd * inv * inv;
  }
};

// Nodes [near_lo, near_hi) are summed directly; the rest come from `far`.
struct Evaluator {
  const double* mu;
  const double* s;
  std::size_t near_lo;
  std::size_t near_hi;
  const FarField* far;

  Partials operator()(std::size_t split, double origin, double t) const {
    Partials f;
    accumulate(mu, s, near_lo, split, origin, t, f.left, f.dleft);
    accumulate(mu, s, split, near_hi, origin, t, f.right, f.dright);
    if (far != nullptr) far->eval(origin, t, f);
    return f;
  }
};

// Zero in (p1, p2) of A/(x-p1) + B/(x-p2) + C with A, B > 0. One of p1, p2 is
// the origin (zero), which keeps the small root accurate.
double two_pole_root(double a, double b, double c, double p1, double p2) {
  const double c1 = a + b - c * (p1 + p2);
  const double c0 = -a * p2 - b * p1 + c * p1 * p2;
  if (c == 0.0) return -c0 / c1;
  const double disc = std::max(c1 * c1 - 4.0 * c * c0, 0.0);
  const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
  const double r1 = q / c;
  const double r2 = (q != 0.0) ? c0 / q : r1;
  const bool in1 = r1 > p1 && r1 < p2;
  const bool in2 = r2 > p1 && r2 < p2;
  if (in1 && !in2) return r1;
  if (in2 && !in1) return r2;
  if (in1 && in2) return (std::abs(r1) < std::abs(r2)) ? r1 : r2;
  return std::nan("");
}

// Keeps a root off the poles when it lies within an ulp of one.
double interior(double a, double b, double x) {
  return std::clamp(x, std::nextafter(a, b), std::nextafter(b, a));
}

double solve_gap(const double* mu, const Evaluator& eval, std::size_t i) {
  const double a = mu[i];
  const double b = mu[i + 1];
  const double gap = b - a;
  const double tol = kGapTolerance * gap;
  const std::size_t split = i + 1;

  // Midpoint decides which pole becomes the origin.
  const double half = 0.5 * gap;
  Partials f = eval(split, a, half);
  double w = f.left + f.right;
  if (w == 0.0) return a + half;

  double origin, t, lo, hi, p1, p2;
  if (w > 0.0) {  // root in (mid, b)
    origin = b;
    p1 = a - b;
    p2 = 0.0;
    t = -half;
    lo = t;
    hi = 0.0;
  } else {
    origin = a;
    p1 = 0.0;
    p2 = gap;
    t = half;
    lo = 0.0;
    hi = t;
  }

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const double d1 = t - p1;
    const double d2 = t - p2;
    const double coef_a = f.dleft * d1 * d1;
    const double coef_b = f.dright * d2 * d2;
    const double coef_c = (f.left - coef_a / d1) + (f.right - coef_b / d2);

    double next = two_pole_root(coef_a, coef_b, coef_c, p1, p2);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);

    if (std::abs(next - t) <= tol || hi - lo <= tol) return interior(a, b, origin + next);

    t = next;
    f = eval(split, origin, t);
    w = f.left + f.right;
    if (w == 0.0) return interior(a, b, origin + t);
    if (w > 0.0) {
      lo = t;
    } else {
      hi = t;
    }
  }
  throw NumericError("secular solver did not converge in gap [" + std::to_string(a) + ", " +
                         std::to_string(b) + "]",
                     gap);
}

void validate(std::span<const double> nodes, std::span<const double> weights) {
  const std::size_t p = nodes.size();
  if (p == 0) throw InvalidParameter("solve_secular needs at least one node");
  if (weights.size() != p) throw InvalidParameter("solve_secular: weight/node count mismatch");
  for (std::size_t i = 0; i < p; ++i) {
    if (!std::isfinite(nodes[i])) throw InvalidParameter("solve_secular: non-finite node");
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw InvalidParameter("solve_secular: weights must be positive");
    if (i > 0 && !(nodes[i] > nodes[i - 1]))
      throw InvalidParameter("solve_secular: nodes must be strictly increasing");
  }
}

}  // namespace

namespace detail {

std::vector<double> solve_secular_direct(std::span<const double> nodes,
                                         std::span<const double> weights) {
  validate(nodes, weights);
  const std::size_t p = nodes.size();
  const Evaluator eval{nodes.data(), weights.data(), 0, p, nullptr};
  std::vector<double> out(p - 1);
  for (std::size_t i = 0; i + 1 < p; ++i) out[i] = solve_gap(nodes.data(), eval, i);
  return out;
}

}  // namespace detail

std::vector<double> solve_secular(std::span<const double> nodes, std::span<const double> weights) {
  const std::size_t p = nodes.size();
  if (p < kDirectBelow) return detail::solve_secular_direct(nodes, weights);
  validate(nodes, weights);

  const double* mu = nodes.data();
  const double* s = weights.data();
  std::vector<double> out(p - 1);
  std::vector<double> scratch_u, scratch_v;
  FarField far;

  for (std::size_t g0 = 0; g0 + 1 < p; g0 += kBlockGaps) {
    const std::size_t g1 = std::min(g0 + kBlockGaps, p - 1);  // gaps [g0, g1)
    const double centre = 0.5 * (mu[g0] + mu[g1]);
    const double radius = kFarRatio * 0.5 * (mu[g1] - mu[g0]);

    // Direct window: every node within `radius` of the centre, and at least
    // the block's own nodes.
    auto first = static_cast<std::size_t>(std::lower_bound(mu, mu + p, centre - radius) - mu);
    auto last = static_cast<std::size_t>(std::upper_bound(mu, mu + p, centre + radius) - mu);
    const std::size_t near_lo = std::min(first, g0);
    const std::size_t near_hi = std::max(last, g1 + 1);

    const FarField* far_ptr = nullptr;
    if (near_lo > 0 || near_hi < p) {
      far.centre = centre;
      far.radius = radius;
      FarField::moments(mu, s, 0, near_lo, centre, radius, scratch_u, scratch_v, far.left,
                        far.dleft);
      FarField::moments(mu, s, near_hi, p, centre, radius, scratch_u, scratch_v, far.right,
                        far.dright);
      far_ptr = &far;
    }
    const Evaluator eval{mu, s, near_lo, near_hi, far_ptr};
    for (std::size_t i = g0; i < g1; ++i) out[i] = solve_gap(mu, eval, i);
  }
  return out;
}

}  // namespace betaflow
