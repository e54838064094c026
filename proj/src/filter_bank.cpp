#include "rsbf/filter_bank.hpp"

#include "rsbf/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <string>

namespace rsbf {

int reservoir_insert(BitArray& filter, std::size_t pos, std::size_t reset_pos) {
  int delta = 0;
  if (reset_pos != pos && filter.reset(reset_pos)) --delta;
  if (filter.set(pos)) ++delta;
  return delta;
}

int forced_insert(BitArray& filter, std::size_t pos, Rng& rng) {
  if (filter.test(pos)) return 0;
  if (filter.ones() == 0) {
    filter.set(pos);
    return 1;
  }
  filter.reset(filter.random_set_bit(rng));
  filter.set(pos);
  return 0;
}

FilterBank::FilterBank(const FilterPlan& plan, std::uint64_t seed)
    : FilterBank(plan.num_filters, plan.filter_bits, plan.p_star, seed) {}

FilterBank::FilterBank(std::size_t num_filters, std::size_t filter_bits, double p_star,
                       std::uint64_t seed)
    : filters_(num_filters, BitArray(filter_bits)),
      filter_bits_(filter_bits),
      p_star_(p_star),
      hash_seed_(derive_seed(seed, SeedStream::kHashing)),
      reservoir_rng_(derive_seed(seed, SeedStream::kReservoir)),
      deletion_rng_(derive_seed(seed, SeedStream::kDeletion)),
      scratch_(num_filters) {
  if (num_filters < 1 || filter_bits < 1) {
    throw ValidationError("a filter bank needs at least one filter of at least one bit");
  }
  if (!(p_star > 0.0 && p_star < 1.0)) throw ValidationError("p* must lie in (0, 1)");
}

Verdict FilterBank::probe(const ElementDigest& d) const {
  std::uint64_t pos = d.a % filter_bits_;
  const std::uint64_t step = d.b % filter_bits_;
  for (const BitArray& f : filters_) {
    if (!f.test(pos)) return Verdict::kDistinct;
    pos = (pos >= filter_bits_ - step) ? pos - (filter_bits_ - step) : pos + step;
  }
  return Verdict::kDuplicate;
}

Decision FilterBank::process(const ElementDigest& d) {
  const std::uint64_t i = elements_seen_ + 1;
  const std::size_t s = filter_bits_;
  positions(d, s, scratch_);

  Decision decision;
  decision.verdict = Verdict::kDuplicate;
  for (std::size_t j = 0; j < filters_.size(); ++j) {
    if (!filters_[j].test(scratch_[j])) {
      decision.verdict = Verdict::kDistinct;
      break;
    }
  }

  const double insert_prob = static_cast<double>(s) / static_cast<double>(i);
  const double u = reservoir_rng_.uniform01();
  if (i <= s || u <= insert_prob) {
    for (std::size_t j = 0; j < filters_.size(); ++j) {
      if (i <= s) {
        filters_[j].set(scratch_[j]);
      } else {
        const auto reset_pos = static_cast<std::size_t>(deletion_rng_.below(s));
        reservoir_insert(filters_[j], scratch_[j], reset_pos);
      }
    }
    decision.inserted = true;
    decision.path = InsertPath::kReservoir;
  } else if (insert_prob < p_star_ && decision.verdict == Verdict::kDistinct) {
    for (std::size_t j = 0; j < filters_.size(); ++j) forced_insert(filters_[j], scratch_[j], deletion_rng_);
    decision.inserted = true;
    decision.path = InsertPath::kForced;
  }

  elements_seen_ = i;
  return decision;
}

double FilterBank::ones_fraction() const {
  return static_cast<double>(ones_total()) /
         (static_cast<double>(filters_.size()) * static_cast<double>(filter_bits_));
}

std::uint64_t FilterBank::ones_total() const {
  std::uint64_t total = 0;
  for (const BitArray& f : filters_) total += f.ones();
  return total;
}

bool operator==(const FilterBank& x, const FilterBank& y) {
  return x.filters_ == y.filters_ && x.filter_bits_ == y.filter_bits_ &&
         std::bit_cast<std::uint64_t>(x.p_star_) == std::bit_cast<std::uint64_t>(y.p_star_) &&
         x.hash_seed_ == y.hash_seed_ && x.elements_seen_ == y.elements_seen_ &&
         x.reservoir_rng_ == y.reservoir_rng_ && x.deletion_rng_ == y.deletion_rng_;
}

// Snapshot layout, all integers little-endian:
//   magic "RSBFSNAP" | u32 version | u32 k | u64 s | u64 elements_seen |
//   u64 p* (IEEE-754 bits) | u64 hash seed |
//   u32 len + reservoir RNG state | u32 len + deletion RNG state |
//   k * ceil(s/64) u64 words, filter-major.
namespace {

constexpr char kMagic[8] = {'R', 'S', 'B', 'F', 'S', 'N', 'A', 'P'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  void raw(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::byte*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  template <typename T>
  void le(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<std::byte>(v >> (8 * i)));
  }
  void blob(const std::string& s) {
    le(static_cast<std::uint32_t>(s.size()));
    raw(s.data(), s.size());
  }
  std::vector<std::byte> take() { return std::move(out_); }

 private:
  std::vector<std::byte> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::byte> in) : in_(in) {}
  std::span<const std::byte> raw(std::size_t n) {
    if (in_.size() - pos_ < n) throw FormatError("snapshot is truncated");
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  template <typename T>
  T le() {
    auto b = raw(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(std::to_integer<std::uint64_t>(b[i]) << (8 * i));
    return v;
  }
  std::string blob() {
    const auto n = le<std::uint32_t>();
    auto b = raw(n);
    return std::string(reinterpret_cast<const char*>(b.data()), b.size());
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::span<const std::byte> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::byte> FilterBank::snapshot() const {
  Writer w;
  w.raw(kMagic, sizeof kMagic);
  w.le(kVersion);
  w.le(static_cast<std::uint32_t>(filters_.size()));
  w.le(static_cast<std::uint64_t>(filter_bits_));
  w.le(elements_seen_);
  w.le(std::bit_cast<std::uint64_t>(p_star_));
  w.le(hash_seed_);
  w.blob(reservoir_rng_.save());
  w.blob(deletion_rng_.save());
  for (const BitArray& f : filters_) {
    for (std::uint64_t word : f.words()) w.le(word);
  }
  return w.take();
}

FilterBank FilterBank::restore(std::span<const std::byte> bytes) {
  Reader r(bytes);
  auto magic = r.raw(sizeof kMagic);
  if (std::memcmp(magic.data(), kMagic, sizeof kMagic) != 0) throw FormatError("not a filter bank snapshot");
  if (const auto version = r.le<std::uint32_t>(); version != kVersion) {
    throw FormatError("unsupported snapshot version " + std::to_string(version));
  }
  const auto k = r.le<std::uint32_t>();
  const auto s = r.le<std::uint64_t>();
  if (k < 1 || s < 1) throw FormatError("snapshot has an empty filter layout");

  FilterBank bank;
  bank.filter_bits_ = static_cast<std::size_t>(s);
  bank.elements_seen_ = r.le<std::uint64_t>();
  bank.p_star_ = std::bit_cast<double>(r.le<std::uint64_t>());
  if (!(bank.p_star_ > 0.0 && bank.p_star_ < 1.0)) throw FormatError("snapshot has p* outside (0, 1)");
  bank.hash_seed_ = r.le<std::uint64_t>();
  try {
    bank.reservoir_rng_.load(r.blob());
    bank.deletion_rng_.load(r.blob());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("snapshot RNG state: ") + e.what());
  }

  const std::size_t words_per_filter = (bank.filter_bits_ + 63) / 64;
  // Reject absurd layouts before allocating.
  if (words_per_filter * 8 > bytes.size()) throw FormatError("snapshot is truncated");
  bank.filters_.assign(k, BitArray(bank.filter_bits_));
  std::vector<std::uint64_t> words(words_per_filter);
  for (BitArray& f : bank.filters_) {
    for (auto& word : words) word = r.le<std::uint64_t>();
    f.assign_words(words);
  }
  if (!r.done()) throw FormatError("snapshot has trailing bytes");
  bank.scratch_.resize(k);
  return bank;
}

}  // namespace rsbf
