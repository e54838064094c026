#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rsbf/decision.hpp"
#include "rsbf/errors.hpp"
#include "rsbf/kernels.hpp"
#include "rsbf/oracle.hpp"
#include "rsbf/stream.hpp"

namespace rsbf {

inline constexpr std::size_t kDefaultWindow = 1000;

// Accuracy and occupancy over one window of the stream. Rates are
// conditional: FPR = FP / true-distinct, FNR = FN / true-duplicate, and 0
// when the denominator is 0.
struct MetricsWindow {
  std::uint64_t end_index = 0;  // stream position (1-based) of the window's last element
  std::uint64_t window_fp = 0;
  std::uint64_t window_fn = 0;
  std::uint64_t window_true_distinct = 0;
  std::uint64_t window_true_duplicate = 0;
  double cum_fpr = 0.0;
  double cum_fnr = 0.0;
  std::uint64_t ones_total = 0;
  std::int64_t ones_delta = 0;  // vs. the previous window (vs. the empty filter for the first)
  // The trailing summary row carries whole-stream counts in the window_*
  // fields and the net occupancy change in ones_delta.
  bool summary = false;

  friend bool operator==(const MetricsWindow&, const MetricsWindow&) = default;
};

inline double safe_rate(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Streams `stream` through `filter` and an exact oracle in lockstep. Emits
// ceil(m / window_size) window rows followed by one summary row. Element
// digests are computed ahead in parallel batches; verdicts stay sequential.
template <DedupFilter Filter>
std::vector<MetricsWindow> evaluate(Filter& filter, const ElementStream& stream,
                                    std::size_t window_size = kDefaultWindow) {
  if (window_size < 1) throw ValidationError("window size must be at least 1");
  constexpr std::size_t kBatch = std::size_t{1} << 16;

  std::vector<MetricsWindow> rows;
  rows.reserve(stream.size() / window_size + 2);
  ExactOracle oracle(std::min<std::size_t>(stream.size(), std::size_t{1} << 24));
  std::vector<ElementDigest> digests(std::min(kBatch, stream.size()));

  MetricsWindow current;
  std::uint64_t cum_fp = 0, cum_fn = 0, cum_distinct = 0, cum_duplicate = 0;
  const std::uint64_t initial_ones = filter.ones_total();
  std::uint64_t previous_ones = initial_ones;

  auto close_window = [&](std::uint64_t end_index) {
    current.end_index = end_index;
    current.cum_fpr = safe_rate(cum_fp, cum_distinct);
    current.cum_fnr = safe_rate(cum_fn, cum_duplicate);
    current.ones_total = filter.ones_total();
    current.ones_delta = static_cast<std::int64_t>(current.ones_total) - static_cast<std::int64_t>(previous_ones);
    previous_ones = current.ones_total;
    rows.push_back(current);
    current = MetricsWindow{};
  };

  for (std::size_t first = 0; first < stream.size(); first += kBatch) {
    const std::size_t count = std::min(kBatch, stream.size() - first);
    std::span<ElementDigest> batch(digests.data(), count);
    kernels::digest_batch(stream, first, filter.hash_seed(), batch);

    for (std::size_t i = 0; i < count; ++i) {
      const bool truly_duplicate = oracle.observe(stream[first + i]);
      const Decision d = filter.process(batch[i]);
      if (truly_duplicate) {
        ++current.window_true_duplicate;
        ++cum_duplicate;
        if (!d.duplicate()) {
          ++current.window_fn;
          ++cum_fn;
        }
      } else {
        ++current.window_true_distinct;
        ++cum_distinct;
        if (d.duplicate()) {
          ++current.window_fp;
          ++cum_fp;
        }
      }
      const std::uint64_t index = first + i + 1;
      if (index % window_size == 0 || index == stream.size()) close_window(index);
    }
  }

  MetricsWindow summary;
  summary.end_index = stream.size();
  summary.window_fp = cum_fp;
  summary.window_fn = cum_fn;
  summary.window_true_distinct = cum_distinct;
  summary.window_true_duplicate = cum_duplicate;
  summary.cum_fpr = safe_rate(cum_fp, cum_distinct);
  summary.cum_fnr = safe_rate(cum_fn, cum_duplicate);
  summary.ones_total = filter.ones_total();
  summary.ones_delta = static_cast<std::int64_t>(summary.ones_total) - static_cast<std::int64_t>(initial_ones);
  summary.summary = true;
  rows.push_back(summary);
  return rows;
}

// End index of the last window whose |ones_delta| reaches `threshold`; every
// later window stays below it. Returns 0 if no window ever reaches it and
// nullopt if the final window still does (never settled). Summary rows are
// ignored.
std::optional<std::uint64_t> settling_index(const std::vector<MetricsWindow>& rows, double threshold);

}  // namespace rsbf
