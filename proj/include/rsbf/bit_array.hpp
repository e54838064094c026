#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rsbf {

class Rng;

// Fixed-size bit array that tracks its own population count. Bit b lives in
// word b / 64 at bit index b % 64.
class BitArray {
 public:
  BitArray() = default;
  explicit BitArray(std::size_t size) : words_((size + 63) / 64, 0), size_(size) {}

  std::size_t size() const { return size_; }
  std::size_t ones() const { return ones_; }

  bool test(std::size_t pos) const { return (words_[pos >> 6] >> (pos & 63)) & 1U; }

  // Both return whether the bit actually changed.
  bool set(std::size_t pos) {
    std::uint64_t& w = words_[pos >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (pos & 63);
    if (w & mask) return false;
    w |= mask;
    ++ones_;
    return true;
  }
  bool reset(std::size_t pos) {
    std::uint64_t& w = words_[pos >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (pos & 63);
    if (!(w & mask)) return false;
    w &= ~mask;
    --ones_;
    return true;
  }

  void fill(bool value);

  // Position of the rank-th set bit (0-based); rank must be < ones().
  std::size_t nth_set(std::size_t rank) const;

  // Uniformly random set bit; ones() must be > 0.
  std::size_t random_set_bit(Rng& rng) const;

  // Full population count, independent of the maintained counter.
  std::size_t recount() const;

  std::span<const std::uint64_t> words() const { return words_; }

  // Replaces the contents; the counter is recomputed. Bits at or past size()
  // must be zero.
  void assign_words(std::span<const std::uint64_t> words);

  friend bool operator==(const BitArray&, const BitArray&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
  std::size_t ones_ = 0;
};

}  // namespace rsbf
