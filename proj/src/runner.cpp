#include "rsbf/runner.hpp"

#include "rsbf/baselines.hpp"
#include "rsbf/errors.hpp"
#include "rsbf/filter_bank.hpp"
#include "rsbf/hashing.hpp"

#include <charconv>
#include <cmath>

namespace rsbf {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kRsbf: return "rsbf";
    case Algorithm::kBloom: return "bloom";
    case Algorithm::kSbf: return "sbf";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "rsbf") return Algorithm::kRsbf;
  if (name == "bloom") return Algorithm::kBloom;
  if (name == "sbf") return Algorithm::kSbf;
  throw ValidationError("unknown algorithm '" + std::string(name) + "' (expected rsbf, bloom or sbf)");
}

FilterPlan resolve_plan(const RunConfig& config) {
  if (config.num_filters) {
    return plan_with_k(config.memory_bits, *config.num_filters, config.fpr_threshold, config.p_star);
  }
  return plan(config.memory_bits, config.fpr_threshold, config.p_star, config.mode);
}

void validate(const RunConfig& config) {
  if (config.window_size < 1) throw ValidationError("window size must be at least 1");
  resolve_plan(config);  // throws on an invalid layout
  if (config.algorithm == Algorithm::kSbf) {
    if (config.sbf_cell_bits < 1 || config.sbf_cell_bits > 8) {
      throw ValidationError("SBF cell width must be 1..8 bits");
    }
    if (config.memory_bits / config.sbf_cell_bits < 1) throw ValidationError("memory too small for one SBF cell");
  }
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

HeaderFields describe(const RunConfig& config) {
  HeaderFields h;
  h.emplace_back("tool", "rsbf");
  h.emplace_back("tool_version", std::string(kToolVersion));
  h.emplace_back("hash_family", std::string(kHashFamily));
  h.emplace_back("algorithm", std::string(to_string(config.algorithm)));
  h.emplace_back("memory_bits", std::to_string(config.memory_bits));
  h.emplace_back("fpr_threshold", format_double(config.fpr_threshold));
  h.emplace_back("p_star", format_double(config.p_star));
  h.emplace_back("seed", std::to_string(config.seed));
  h.emplace_back("window_size", std::to_string(config.window_size));
  h.emplace_back("plan_mode", std::string(to_string(config.mode)));
  h.emplace_back("num_filters_override", config.num_filters ? std::to_string(*config.num_filters) : "none");
  const FilterPlan p = resolve_plan(config);
  h.emplace_back("num_filters", std::to_string(p.num_filters));
  h.emplace_back("filter_bits", std::to_string(p.filter_bits));
  h.emplace_back("k_raw", format_double(p.k_raw));
  if (config.algorithm == Algorithm::kSbf) {
    const SbfConfig sbf = StableBloom::for_memory(config.memory_bits, p.num_filters, config.sbf_cell_bits,
                                                  config.sbf_decrements);
    h.emplace_back("sbf_cells", std::to_string(sbf.cells));
    h.emplace_back("sbf_cell_bits", std::to_string(sbf.cell_bits));
    h.emplace_back("sbf_decrements",
                   std::to_string(sbf.decrements != 0 ? sbf.decrements
                                                      : StableBloom::default_decrements(p.num_filters, sbf.cell_bits)));
  }
  h.emplace_back("input", config.input_description);
  return h;
}

RunResult run(const RunConfig& config, const ElementStream& stream) {
  validate(config);
  RunResult result;
  result.header = describe(config);
  const FilterPlan p = resolve_plan(config);
  switch (config.algorithm) {
    case Algorithm::kRsbf: {
      FilterBank bank(p, config.seed);
      result.rows = evaluate(bank, stream, config.window_size);
      break;
    }
    case Algorithm::kBloom: {
      ClassicBloom bloom(config.memory_bits, p.num_filters, config.seed);
      result.rows = evaluate(bloom, stream, config.window_size);
      break;
    }
    case Algorithm::kSbf: {
      StableBloom sbf(
          StableBloom::for_memory(config.memory_bits, p.num_filters, config.sbf_cell_bits, config.sbf_decrements),
          config.seed);
      result.rows = evaluate(sbf, stream, config.window_size);
      break;
    }
  }
  return result;
}

std::vector<CompareRow> compare(const RunConfig& base, const std::vector<std::uint64_t>& memories,
                                const std::vector<Algorithm>& algorithms, const ElementStream& stream) {
  std::vector<RunConfig> cells;
  for (std::uint64_t memory : memories) {
    for (Algorithm a : algorithms) {
      RunConfig c = base;
      c.memory_bits = memory;
      c.algorithm = a;
      validate(c);
      cells.push_back(c);
    }
  }

  std::vector<CompareRow> rows(cells.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(cells.size()); ++i) {
    const RunConfig& c = cells[static_cast<std::size_t>(i)];
    const RunResult r = run(c, stream);
    const FilterPlan p = resolve_plan(c);
    CompareRow row;
    row.algorithm = c.algorithm;
    row.memory_bits = c.memory_bits;
    row.num_hashes = p.num_filters;
    switch (c.algorithm) {
      case Algorithm::kRsbf: row.slots = p.filter_bits; break;
      case Algorithm::kBloom: row.slots = c.memory_bits; break;
      case Algorithm::kSbf: row.slots = c.memory_bits / c.sbf_cell_bits; break;
    }
    row.summary = r.summary();
    row.last_window = r.rows.size() >= 2 ? r.rows[r.rows.size() - 2] : r.summary();
    rows[static_cast<std::size_t>(i)] = row;
  }
  return rows;
}

namespace {

void write_header(std::ostream& out, const HeaderFields& header) {
  for (const auto& [key, value] : header) out << "# " << key << '=' << value << '\n';
}

}  // namespace

void write_run_csv(std::ostream& out, const HeaderFields& header, const std::vector<MetricsWindow>& rows) {
  write_header(out, header);
  out << "end_index,window_fp,window_fn,window_true_distinct,window_true_duplicate,cum_fpr,cum_fnr,ones_total,"
         "ones_delta,summary\n";
  for (const auto& r : rows) {
    out << r.end_index << ',' << r.window_fp << ',' << r.window_fn << ',' << r.window_true_distinct << ','
        << r.window_true_duplicate << ',' << format_double(r.cum_fpr) << ',' << format_double(r.cum_fnr) << ','
        << r.ones_total << ',' << r.ones_delta << ',' << (r.summary ? 1 : 0) << '\n';
  }
}

void write_compare_csv(std::ostream& out, const HeaderFields& header, const std::vector<CompareRow>& rows) {
  write_header(out, header);
  out << "algorithm,memory_bits,num_hashes,slots,cum_fpr,cum_fnr,last_window_fpr,last_window_fnr,ones_total\n";
  for (const auto& r : rows) {
    out << to_string(r.algorithm) << ',' << r.memory_bits << ',' << r.num_hashes << ',' << r.slots << ','
        << format_double(r.summary.cum_fpr) << ',' << format_double(r.summary.cum_fnr) << ','
        << format_double(safe_rate(r.last_window.window_fp, r.last_window.window_true_distinct)) << ','
        << format_double(safe_rate(r.last_window.window_fn, r.last_window.window_true_duplicate)) << ','
        << r.summary.ones_total << '\n';
  }
}

}  // namespace rsbf
