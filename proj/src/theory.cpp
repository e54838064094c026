#include "rsbf/theory.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

namespace rsbf::theory {

namespace {

// 1 - 1/e
constexpr double kSetOnce = 1.0 - 1.0 / std::numbers::e;

Bound clamp_probability(double raw, bool valid) {
  if (!(raw >= 0.0)) return {0.0, false};  // also catches NaN
  if (raw > 1.0) return {1.0, false};
  return {raw, valid};
}

}  // namespace

double classic_fpr(double n, double m, double k) {
  if (n <= 0.0) return 0.0;
  return std::clamp(std::pow(-std::expm1(-k * n / m), k), 0.0, 1.0);
}

double optimal_k(double m, double n) { return std::numbers::ln2 * m / n; }

Bound rsbf_fpr_bound(std::uint64_t m, std::uint64_t s, std::uint64_t k, std::uint64_t universe) {
  const double md = static_cast<double>(m);
  const double sd = static_cast<double>(s);
  const double kd = static_cast<double>(k);
  // ((U-1)/U)^m as exp(m ln(1 - 1/U)); U == 1 gives exp(-inf) == 0.
  const double unique = std::exp(md * std::log1p(-1.0 / static_cast<double>(universe)));
  const double ratio = sd / md;
  const double bracket = 1.0 - kd * ratio + std::pow(kd > 0 ? kSetOnce * ratio : 0.0, kd);
  return clamp_probability(unique * bracket, m >= s && kd * sd < md);
}

Bound rsbf_fnr_bound(std::uint64_t m, std::uint64_t s, std::uint64_t k, std::uint64_t universe) {
  const double md = static_cast<double>(m);
  const double raw = static_cast<double>(k) * (md - static_cast<double>(s)) /
                     (static_cast<double>(universe) * md);
  return clamp_probability(raw, m >= s);
}

double rsbf_fnr_asymptote(std::uint64_t k, std::uint64_t universe) {
  return std::min(1.0, static_cast<double>(k) / static_cast<double>(universe));
}

OnesStep expected_ones_step(double ones, double s, double insert_prob) {
  const double epsilon = 1.0 - ones * (2.0 * s - 1.0) / (s * s);
  assert(std::abs(epsilon) <= 1.0 + 1e-12);
  return {epsilon, ones + insert_prob * epsilon};
}

double ones_variance(double beta, double insert_prob) {
  return insert_prob * (beta * beta + (beta - 1.0) * (beta - 1.0)) - insert_prob * insert_prob;
}

InitialFpr initial_fpr_components(std::uint64_t s, std::uint64_t k) {
  const double sd = static_cast<double>(s);
  const double kd = static_cast<double>(k);
  // (1 - 1/s)^s; log1p(-1) == -inf handles s == 1.
  const double unset = std::exp(sd * std::log1p(-1.0 / sd));
  return {std::pow(1.0 - unset, kd), std::pow(kSetOnce, kd)};
}

double plan_k_raw(double fpr_threshold) { return std::log(fpr_threshold) / std::log(kSetOnce); }

std::uint64_t planned_k(double k_raw) {
  const double mean = (1.0 + k_raw) / 2.0;
  const double rounded = std::floor(mean + 0.5);
  return rounded < 1.0 ? 1 : static_cast<std::uint64_t>(rounded);
}

}  // namespace rsbf::theory
