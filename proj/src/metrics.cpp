#include "rsbf/metrics.hpp"

#include <cstdlib>

namespace rsbf {

std::string_view to_string(Verdict v) { return v == Verdict::kDuplicate ? "DUPLICATE" : "DISTINCT"; }

std::optional<std::uint64_t> settling_index(const std::vector<MetricsWindow>& rows, double threshold) {
  std::uint64_t last_violation = 0;
  const MetricsWindow* last_window = nullptr;
  for (const auto& row : rows) {
    if (row.summary) continue;
    last_window = &row;
    if (static_cast<double>(std::llabs(row.ones_delta)) >= threshold) last_violation = row.end_index;
  }
  if (last_window != nullptr && last_violation == last_window->end_index) return std::nullopt;
  return last_violation;
}

}  // namespace rsbf
