#include "rsbf/kernels.hpp"

#include "rsbf/bit_array.hpp"
#include "rsbf/filter_bank.hpp"
#include "rsbf/random.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <vector>

namespace rsbf::kernels {

void digest_batch(const ElementStream& stream, std::size_t first, std::uint64_t seed,
                  std::span<ElementDigest> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = digest(stream[first + static_cast<std::size_t>(i)], seed);
  }
}

void digest_batch_serial(const ElementStream& stream, std::size_t first, std::uint64_t seed,
                         std::span<ElementDigest> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = digest(stream[first + i], seed);
}

namespace {

constexpr std::uint64_t kTrialsPerBlock = 4096;

// Counts of a one-step change of -1, 0, +1.
using DeltaCounts = std::array<std::uint64_t, 3>;

DeltaCounts run_block(std::size_t s, std::size_t ones, double insert_prob, std::uint64_t trials,
                      std::uint64_t seed, std::uint64_t block) {
  // Exchangeability: with uniform hashed and reset positions, which bits are
  // set does not matter, only how many.
  BitArray filter(s);
  for (std::size_t b = 0; b < ones; ++b) filter.set(b);

  Rng rng(derive_seed(seed, SeedStream::kMonteCarlo, block));
  DeltaCounts counts{};
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (!(rng.uniform01() < insert_prob)) {
      ++counts[1];
      continue;
    }
    const auto pos = static_cast<std::size_t>(rng.below(s));
    const auto reset_pos = static_cast<std::size_t>(rng.below(s));
    const bool pos_was_set = filter.test(pos);
    const bool reset_was_set = filter.test(reset_pos);
    const int delta = reservoir_insert(filter, pos, reset_pos);
    assert(delta >= -1 && delta <= 1);
    ++counts[static_cast<std::size_t>(delta + 1)];
    if (!pos_was_set) filter.reset(pos);
    if (reset_was_set) filter.set(reset_pos);
  }
  return counts;
}

StepMoments moments(const DeltaCounts& c) {
  StepMoments m;
  m.trials = c[0] + c[1] + c[2];
  if (m.trials == 0) return m;
  const double n = static_cast<double>(m.trials);
  const double pm = static_cast<double>(c[0]) / n;
  const double p0 = static_cast<double>(c[1]) / n;
  const double pp = static_cast<double>(c[2]) / n;
  m.mean = pp - pm;
  const auto central = [&](int power) {
    return pm * std::pow(-1.0 - m.mean, power) + p0 * std::pow(-m.mean, power) +
           pp * std::pow(1.0 - m.mean, power);
  };
  m.variance = central(2);
  m.mean_se = std::sqrt(m.variance / n);
  m.variance_se = std::sqrt(std::max(0.0, central(4) - m.variance * m.variance) / n);
  return m;
}

std::uint64_t block_trials(std::uint64_t trials, std::uint64_t block) {
  const std::uint64_t start = block * kTrialsPerBlock;
  return std::min(kTrialsPerBlock, trials - start);
}

}  // namespace

StepMoments ones_step_monte_carlo(std::size_t s, std::size_t ones, double insert_prob, std::uint64_t trials,
                                  std::uint64_t seed) {
  const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<DeltaCounts> partial(blocks);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const auto block = static_cast<std::uint64_t>(b);
    partial[block] = run_block(s, ones, insert_prob, block_trials(trials, block), seed, block);
  }
  DeltaCounts total{};
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < 3; ++i) total[i] += p[i];
  }
  return moments(total);
}

StepMoments ones_step_monte_carlo_serial(std::size_t s, std::size_t ones, double insert_prob,
                                         std::uint64_t trials, std::uint64_t seed) {
  DeltaCounts total{};
  const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  for (std::uint64_t block = 0; block < blocks; ++block) {
    const auto c = run_block(s, ones, insert_prob, block_trials(trials, block), seed, block);
    for (std::size_t i = 0; i < 3; ++i) total[i] += c[i];
  }
  return moments(total);
}

}  // namespace rsbf::kernels
