#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rsbf/metrics.hpp"
#include "rsbf/plan.hpp"
#include "rsbf/stream.hpp"

namespace rsbf {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum class Algorithm { kRsbf, kBloom, kSbf };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

// Everything needed to reproduce one filter run on a given input.
struct RunConfig {
  Algorithm algorithm = Algorithm::kRsbf;
  std::uint64_t memory_bits = 16384;
  double fpr_threshold = 0.1;
  double p_star = kDefaultPStar;
  std::uint64_t seed = 1;
  std::size_t window_size = kDefaultWindow;
  PlanMode mode = PlanMode::kBalanced;
  std::optional<std::uint64_t> num_filters;  // overrides the planner's k
  unsigned sbf_cell_bits = 3;
  std::size_t sbf_decrements = 0;  // 0: StableBloom::default_decrements
  std::string input_description;   // recorded in the report header only
};

// Throws ValidationError if any field violates a module precondition.
void validate(const RunConfig& config);

// The k used by every algorithm for this config (planner output unless overridden).
FilterPlan resolve_plan(const RunConfig& config);

using HeaderFields = std::vector<std::pair<std::string, std::string>>;

struct RunResult {
  HeaderFields header;
  std::vector<MetricsWindow> rows;

  const MetricsWindow& summary() const { return rows.back(); }
};

RunResult run(const RunConfig& config, const ElementStream& stream);

struct CompareRow {
  Algorithm algorithm = Algorithm::kRsbf;
  std::uint64_t memory_bits = 0;
  std::size_t num_hashes = 0;
  std::size_t slots = 0;  // bits per filter (RSBF), bits (Bloom) or cells (SBF)
  MetricsWindow summary;
  MetricsWindow last_window;
};

// One run per (memory, algorithm) cell, all on the same input and seed.
// Cells are independent and run in parallel; the result order is fixed
// (memory-major, then algorithm order as given).
std::vector<CompareRow> compare(const RunConfig& base, const std::vector<std::uint64_t>& memories,
                                const std::vector<Algorithm>& algorithms, const ElementStream& stream);

HeaderFields describe(const RunConfig& config);

// "# key=value" header lines, then a CSV table.
void write_run_csv(std::ostream& out, const HeaderFields& header, const std::vector<MetricsWindow>& rows);
void write_compare_csv(std::ostream& out, const HeaderFields& header, const std::vector<CompareRow>& rows);

// Shortest round-trippable decimal form; stable across runs.
std::string format_double(double v);

}  // namespace rsbf
