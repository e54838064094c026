#include "rsbf/plan.hpp"

#include "rsbf/errors.hpp"
#include "rsbf/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace rsbf {

namespace {

constexpr double kMaxPlannableFpr = 1.0 - 1.0 / std::numbers::e;

void check_open_unit(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw ValidationError(std::string(name) + " must lie in (0, 1), got " + std::to_string(value));
  }
}

}  // namespace

std::string_view to_string(PlanMode mode) {
  switch (mode) {
    case PlanMode::kBalanced: return "balanced";
    case PlanMode::kLowFnr: return "low-fnr";
    case PlanMode::kLowFpr: return "low-fpr";
  }
  return "unknown";
}

FilterPlan plan_with_k(std::uint64_t memory_bits, std::uint64_t num_filters, double fpr_threshold,
                       double p_star) {
  check_open_unit(fpr_threshold, "fpr threshold");
  check_open_unit(p_star, "p*");
  if (num_filters < 1) throw ValidationError("number of filters must be at least 1");
  if (memory_bits < 2 || memory_bits / num_filters < 2) {
    throw ValidationError("memory budget of " + std::to_string(memory_bits) + " bits is too small for " +
                          std::to_string(num_filters) + " filters of at least 2 bits each");
  }
  FilterPlan p;
  p.memory_bits = memory_bits;
  p.num_filters = num_filters;
  p.filter_bits = memory_bits / num_filters;
  p.fpr_threshold = fpr_threshold;
  p.p_star = p_star;
  p.k_raw = theory::plan_k_raw(fpr_threshold);
  return p;
}

FilterPlan plan(std::uint64_t memory_bits, double fpr_threshold, double p_star, PlanMode mode) {
  if (!(fpr_threshold > 0.0 && fpr_threshold < kMaxPlannableFpr)) {
    throw ValidationError("fpr threshold " + std::to_string(fpr_threshold) +
                          " is outside (0, 1 - 1/e); the planner would need fewer than one filter. "
                          "Pass the number of filters explicitly instead");
  }
  const double k_raw = theory::plan_k_raw(fpr_threshold);
  std::uint64_t k = 1;
  switch (mode) {
    case PlanMode::kBalanced: k = theory::planned_k(k_raw); break;
    case PlanMode::kLowFnr: k = 1; break;
    case PlanMode::kLowFpr: k = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(k_raw + 0.5))); break;
  }
  FilterPlan p = plan_with_k(memory_bits, k, fpr_threshold, p_star);
  p.mode = mode;
  return p;
}

}  // namespace rsbf
