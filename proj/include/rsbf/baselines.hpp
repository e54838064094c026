#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "rsbf/bit_array.hpp"
#include "rsbf/decision.hpp"
#include "rsbf/hashing.hpp"
#include "rsbf/random.hpp"

namespace rsbf {

// Textbook Bloom filter over m bits with k double-hashed probes. Every element
// is inserted, so it never reports a false negative.
class ClassicBloom {
 public:
  ClassicBloom(std::size_t bits, std::size_t num_hashes, std::uint64_t seed);

  Decision process(std::string_view element) { return process(digest(element, hash_seed_)); }
  Decision process(const ElementDigest& d);
  Verdict probe(std::string_view element) const { return probe(digest(element, hash_seed_)); }
  Verdict probe(const ElementDigest& d) const;

  std::size_t bits() const { return bits_.size(); }
  std::size_t num_hashes() const { return num_hashes_; }
  std::uint64_t inserted_count() const { return inserted_; }
  std::uint64_t ones_total() const { return bits_.ones(); }
  std::uint64_t hash_seed() const { return hash_seed_; }

 private:
  BitArray bits_;
  std::size_t num_hashes_;
  std::uint64_t hash_seed_;
  std::uint64_t inserted_ = 0;
  std::vector<std::size_t> scratch_;
};

struct SbfConfig {
  std::size_t cells = 0;        // m'
  unsigned cell_bits = 3;       // d; Max = 2^d - 1
  std::size_t num_hashes = 3;   // k
  std::size_t decrements = 0;   // P; 0 selects default_decrements()
};

// Stable Bloom filter baseline: probe k cells, decrement P uniformly random
// cells by one (floored at zero), then set the k probed cells to Max.
// Reconstructed from its published description; fidelity is best-effort.
class StableBloom {
 public:
  StableBloom(const SbfConfig& config, std::uint64_t seed);

  // Grants the SBF the same bit budget as an RSBF: m' = floor(M / d).
  static SbfConfig for_memory(std::uint64_t memory_bits, std::size_t num_hashes, unsigned cell_bits = 3,
                              std::size_t decrements = 0);

  // P = k * Max: per element, the decrement mass matches the most counter mass
  // the k sets can add.
  static std::size_t default_decrements(std::size_t num_hashes, unsigned cell_bits);

  Decision process(std::string_view element) { return process(digest(element, hash_seed_)); }
  Decision process(const ElementDigest& d);

  std::size_t cells() const { return cells_.size(); }
  std::uint8_t max_value() const { return max_; }
  std::size_t num_hashes() const { return num_hashes_; }
  std::size_t decrements() const { return decrements_; }
  std::uint8_t cell(std::size_t i) const { return cells_[i]; }
  std::uint64_t ones_total() const { return nonzero_; }
  std::uint64_t hash_seed() const { return hash_seed_; }

 private:
  std::vector<std::uint8_t> cells_;
  std::uint8_t max_;
  std::size_t num_hashes_;
  std::size_t decrements_;
  std::uint64_t hash_seed_;
  Rng decrement_rng_;
  std::uint64_t nonzero_ = 0;
  std::vector<std::size_t> scratch_;
};

}  // namespace rsbf
