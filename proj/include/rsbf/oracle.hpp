#pragma once

#include <cstddef>
#include <string_view>

#include <absl/container/flat_hash_set.h>

namespace rsbf {

// Exact membership over everything observed so far. Stores views, so the
// observed bytes must outlive the oracle. Lookup hashes the element to a
// 64-bit digest and compares the full bytes on a digest match.
class ExactOracle {
 public:
  ExactOracle() = default;
  explicit ExactOracle(std::size_t expected) { seen_.reserve(expected); }

  // Records the element; returns true if it had been observed before.
  bool observe(std::string_view element) { return !seen_.insert(element).second; }

  bool contains(std::string_view element) const { return seen_.contains(element); }
  std::size_t distinct() const { return seen_.size(); }

 private:
  absl::flat_hash_set<std::string_view> seen_;
};

}  // namespace rsbf
