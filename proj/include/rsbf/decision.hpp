#pragma once

#include <concepts>
#include <cstdint>
#include <string_view>

#include "rsbf/hashing.hpp"

namespace rsbf {

enum class Verdict : std::uint8_t { kDistinct, kDuplicate };

// How (if at all) a filter wrote the element's bits.
enum class InsertPath : std::uint8_t {
  kNone,
  kReservoir,  // accepted with probability s/i (always during the first s elements)
  kForced,     // below the p* threshold and judged distinct
  kDirect,     // baselines: every element is written
};

struct Decision {
  Verdict verdict = Verdict::kDistinct;
  bool inserted = false;
  InsertPath path = InsertPath::kNone;

  bool duplicate() const { return verdict == Verdict::kDuplicate; }
};

std::string_view to_string(Verdict v);

// Anything that can stand in for a streaming duplicate detector in the
// evaluation harness. `ones_total` is the occupancy telemetry (set bits, or
// non-zero cells for counter-based filters).
template <typename F>
concept DedupFilter = requires(F f, const F cf, std::string_view element, const ElementDigest& d) {
  { f.process(element) } -> std::same_as<Decision>;
  { f.process(d) } -> std::same_as<Decision>;
  { cf.hash_seed() } -> std::convertible_to<std::uint64_t>;
  { cf.ones_total() } -> std::convertible_to<std::uint64_t>;
};

}  // namespace rsbf
