#include "rsbf/baselines.hpp"

#include "rsbf/errors.hpp"

namespace rsbf {

ClassicBloom::ClassicBloom(std::size_t bits, std::size_t num_hashes, std::uint64_t seed)
    : bits_(bits),
      num_hashes_(num_hashes),
      hash_seed_(derive_seed(seed, SeedStream::kHashing)),
      scratch_(num_hashes) {
  if (bits < 1 || num_hashes < 1) throw ValidationError("a Bloom filter needs at least one bit and one hash");
}

Verdict ClassicBloom::probe(const ElementDigest& d) const {
  std::vector<std::size_t> pos(num_hashes_);
  positions(d, bits_.size(), pos);
  for (std::size_t p : pos) {
    if (!bits_.test(p)) return Verdict::kDistinct;
  }
  return Verdict::kDuplicate;
}

Decision ClassicBloom::process(const ElementDigest& d) {
  positions(d, bits_.size(), scratch_);
  Decision decision;
  decision.verdict = Verdict::kDuplicate;
  for (std::size_t p : scratch_) {
    if (!bits_.test(p)) {
      decision.verdict = Verdict::kDistinct;
      break;
    }
  }
  for (std::size_t p : scratch_) bits_.set(p);
  ++inserted_;
  decision.inserted = true;
  decision.path = InsertPath::kDirect;
  return decision;
}

StableBloom::StableBloom(const SbfConfig& config, std::uint64_t seed)
    : cells_(config.cells, 0),
      max_(static_cast<std::uint8_t>((1U << config.cell_bits) - 1)),
      num_hashes_(config.num_hashes),
      decrements_(config.decrements != 0 ? config.decrements
                                         : default_decrements(config.num_hashes, config.cell_bits)),
      hash_seed_(derive_seed(seed, SeedStream::kHashing)),
      decrement_rng_(derive_seed(seed, SeedStream::kSbfDecrement)),
      scratch_(config.num_hashes) {
  if (config.cells < 1 || config.num_hashes < 1) {
    throw ValidationError("a stable Bloom filter needs at least one cell and one hash");
  }
  if (config.cell_bits < 1 || config.cell_bits > 8) throw ValidationError("cell width must be 1..8 bits");
}

SbfConfig StableBloom::for_memory(std::uint64_t memory_bits, std::size_t num_hashes, unsigned cell_bits,
                                  std::size_t decrements) {
  if (cell_bits < 1 || cell_bits > 8) throw ValidationError("cell width must be 1..8 bits");
  return SbfConfig{static_cast<std::size_t>(memory_bits / cell_bits), cell_bits, num_hashes, decrements};
}

std::size_t StableBloom::default_decrements(std::size_t num_hashes, unsigned cell_bits) {
  return num_hashes * ((std::size_t{1} << cell_bits) - 1);
}

Decision StableBloom::process(const ElementDigest& d) {
  positions(d, cells_.size(), scratch_);
  Decision decision;
  decision.verdict = Verdict::kDuplicate;
  for (std::size_t p : scratch_) {
    if (cells_[p] == 0) {
      decision.verdict = Verdict::kDistinct;
      break;
    }
  }

  // Independent uniform picks; a pick landing on a zero cell is a no-op.
  for (std::size_t n = 0; n < decrements_; ++n) {
    std::uint8_t& c = cells_[decrement_rng_.below(cells_.size())];
    if (c > 0 && --c == 0) --nonzero_;
  }
  for (std::size_t p : scratch_) {
    if (cells_[p] == 0) ++nonzero_;
    cells_[p] = max_;
  }
  decision.inserted = true;
  decision.path = InsertPath::kDirect;
  return decision;
}

}  // namespace rsbf
