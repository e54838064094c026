#pragma once

#include <cstdint>
#include <string_view>

namespace rsbf {

inline constexpr double kDefaultPStar = 0.03;

enum class PlanMode {
  kBalanced,  // k = mean of 1 and k_raw: trades FPR against FNR
  kLowFnr,    // k = 1
  kLowFpr,    // k = round(k_raw)
};

std::string_view to_string(PlanMode mode);

// Layout of k filters of s bits carved out of a memory budget M.
struct FilterPlan {
  std::uint64_t memory_bits = 0;
  std::uint64_t num_filters = 0;
  std::uint64_t filter_bits = 0;
  double fpr_threshold = 0.0;
  double p_star = kDefaultPStar;
  double k_raw = 0.0;  // ln(FPR_t)/ln(1 - 1/e), before rounding
  PlanMode mode = PlanMode::kBalanced;

  friend bool operator==(const FilterPlan&, const FilterPlan&) = default;
};

// Derives k from the target FPR and splits M evenly: s = floor(M/k).
// Throws ValidationError when M < 2k, FPR_t is outside (0, 1 - 1/e), or
// p_star is outside (0, 1).
FilterPlan plan(std::uint64_t memory_bits, double fpr_threshold, double p_star = kDefaultPStar,
                PlanMode mode = PlanMode::kBalanced);

// Explicit k; FPR_t only needs to lie in (0, 1).
FilterPlan plan_with_k(std::uint64_t memory_bits, std::uint64_t num_filters, double fpr_threshold,
                       double p_star = kDefaultPStar);

}  // namespace rsbf
