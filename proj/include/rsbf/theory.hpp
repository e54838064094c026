#pragma once

#include <cstdint>

// Closed-form predictors for classic Bloom filters and for the reservoir
// sampling filter. All functions are pure and total on their preconditions;
// probabilities are clamped into [0, 1].
namespace rsbf::theory {

// A clamped prediction. `valid` is false when the closed form was evaluated
// outside the regime it was derived for (e.g. stream not much longer than k*s)
// or had to be clamped.
struct Bound {
  double value = 0.0;
  bool valid = true;
};

// (1 - e^{-kn/m})^k
double classic_fpr(double n, double m, double k);

// ln 2 * m / n, unrounded.
double optimal_k(double m, double n);

// ((U-1)/U)^m * [1 - k*s/m + ((1 - 1/e) * s/m)^k]
Bound rsbf_fpr_bound(std::uint64_t m, std::uint64_t s, std::uint64_t k, std::uint64_t universe);

// k*(m - s) / (U*m)
Bound rsbf_fnr_bound(std::uint64_t m, std::uint64_t s, std::uint64_t k, std::uint64_t universe);

// Limit of the FNR bound as the stream grows: k / U.
double rsbf_fnr_asymptote(std::uint64_t k, std::uint64_t universe);

struct OnesStep {
  double epsilon = 0.0;        // 1 - lambda*(2s-1)/s^2
  double expected_next = 0.0;  // lambda + p_i * epsilon
};

// Expected set-bit count of one filter after one more element, given
// `ones` set bits now and insert probability `insert_prob`.
OnesStep expected_ones_step(double ones, double s, double insert_prob);

// p(beta^2 + (beta-1)^2) - p^2, beta = ones / s.
double ones_variance(double beta, double insert_prob);

struct InitialFpr {
  double exact = 0.0;   // (1 - (1 - 1/s)^s)^k
  double approx = 0.0;  // (1 - 1/e)^k
};

// False-positive probability for element s+1, right after the always-insert prefix.
InitialFpr initial_fpr_components(std::uint64_t s, std::uint64_t k);

// ln(FPR_t) / ln(1 - 1/e)
double plan_k_raw(double fpr_threshold);

// Arithmetic mean of 1 and k_raw, rounded half-up, at least 1.
std::uint64_t planned_k(double k_raw);

}  // namespace rsbf::theory
