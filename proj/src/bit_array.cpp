#include "rsbf/bit_array.hpp"

#include "rsbf/errors.hpp"
#include "rsbf/random.hpp"

#include <algorithm>
#include <cassert>

namespace rsbf {

namespace {

// Rejection sampling is O(s / ones) expected draws; past this many misses the
// occupancy is low enough that a rank scan is cheaper.
constexpr int kMaxRejectionTries = 32;

}  // namespace

void BitArray::fill(bool value) {
  std::fill(words_.begin(), words_.end(), value ? ~std::uint64_t{0} : 0);
  if (value && (size_ & 63) != 0) words_.back() = (std::uint64_t{1} << (size_ & 63)) - 1;
  ones_ = value ? size_ : 0;
}

std::size_t BitArray::nth_set(std::size_t rank) const {
  assert(rank < ones_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const auto count = static_cast<std::size_t>(std::popcount(words_[w]));
    if (rank < count) {
      std::uint64_t word = words_[w];
      for (std::size_t r = 0; r < rank; ++r) word &= word - 1;  // drop lowest set bits
      return w * 64 + static_cast<std::size_t>(std::countr_zero(word));
    }
    rank -= count;
  }
  assert(false && "rank out of range");
  return size_;
}

std::size_t BitArray::random_set_bit(Rng& rng) const {
  assert(ones_ > 0);
  for (int attempt = 0; attempt < kMaxRejectionTries; ++attempt) {
    const auto pos = static_cast<std::size_t>(rng.below(size_));
    if (test(pos)) return pos;
  }
  return nth_set(static_cast<std::size_t>(rng.below(ones_)));
}

std::size_t BitArray::recount() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

void BitArray::assign_words(std::span<const std::uint64_t> words) {
  if (words.size() != words_.size()) throw FormatError("bit array word count mismatch");
  if ((size_ & 63) != 0 && (words.back() >> (size_ & 63)) != 0) {
    throw FormatError("bit array has bits set past its size");
  }
  std::copy(words.begin(), words.end(), words_.begin());
  ones_ = recount();
}

}  // namespace rsbf
