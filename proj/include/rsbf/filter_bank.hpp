#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rsbf/bit_array.hpp"
#include "rsbf/decision.hpp"
#include "rsbf/hashing.hpp"
#include "rsbf/plan.hpp"
#include "rsbf/random.hpp"

namespace rsbf {

// One reservoir-path insertion into a single filter: clear `reset_pos`
// (unless it is `pos` itself), then set `pos`. Returns the change in ones,
// which is always -1, 0 or +1.
int reservoir_insert(BitArray& filter, std::size_t pos, std::size_t reset_pos);

// One threshold-path insertion into a single filter: if `pos` is clear, swap
// a uniformly random set bit out for it, so the ones count does not move. An
// empty filter just gets `pos` set.
int forced_insert(BitArray& filter, std::size_t pos, Rng& rng);

// Reservoir-sampling Bloom filter: k filters of s bits, element i inserted
// with probability s/i (always for i <= s), with every reservoir insertion
// clearing one uniformly chosen bit per filter. Once s/i drops below p*,
// elements judged distinct are force-inserted by swapping out a set bit.
//
// Single writer: process() needs exclusive access; probe() and the
// accessors may run concurrently with each other.
class FilterBank {
 public:
  FilterBank(const FilterPlan& plan, std::uint64_t seed);
  FilterBank(std::size_t num_filters, std::size_t filter_bits, double p_star, std::uint64_t seed);

  Decision process(std::string_view element) { return process(digest(element, hash_seed_)); }
  Decision process(const ElementDigest& d);

  Verdict probe(std::string_view element) const { return probe(digest(element, hash_seed_)); }
  Verdict probe(const ElementDigest& d) const;

  double ones_fraction() const;
  std::uint64_t ones_total() const;

  std::size_t num_filters() const { return filters_.size(); }
  std::size_t filter_bits() const { return filter_bits_; }
  std::uint64_t elements_seen() const { return elements_seen_; }
  double p_star() const { return p_star_; }
  std::uint64_t hash_seed() const { return hash_seed_; }

  const BitArray& filter(std::size_t j) const { return filters_[j]; }
  BitArray& mutable_filter(std::size_t j) { return filters_[j]; }

  // Serialized form: see snapshot format in README.
  std::vector<std::byte> snapshot() const;
  static FilterBank restore(std::span<const std::byte> bytes);

  // Bit-identical filters, counters, seeds and RNG states.
  friend bool operator==(const FilterBank& x, const FilterBank& y);

 private:
  FilterBank() = default;

  std::vector<BitArray> filters_;
  std::size_t filter_bits_ = 0;
  double p_star_ = kDefaultPStar;
  std::uint64_t hash_seed_ = 0;
  std::uint64_t elements_seen_ = 0;
  Rng reservoir_rng_;
  Rng deletion_rng_;
  std::vector<std::size_t> scratch_;
};

}  // namespace rsbf
