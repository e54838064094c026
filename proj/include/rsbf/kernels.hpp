#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "rsbf/hashing.hpp"
#include "rsbf/stream.hpp"

// Data-parallel kernels. Each OpenMP kernel has a serial reference with the
// same signature; both produce bit-identical results for any thread count.
namespace rsbf::kernels {

// out[i] = digest(stream[first + i], seed)
void digest_batch(const ElementStream& stream, std::size_t first, std::uint64_t seed,
                  std::span<ElementDigest> out);
void digest_batch_serial(const ElementStream& stream, std::size_t first, std::uint64_t seed,
                         std::span<ElementDigest> out);

// Sample moments of the one-step change in a filter's ones count under the
// reservoir path alone: insert with probability p, hashed position and reset
// position both uniform over s.
struct StepMoments {
  std::uint64_t trials = 0;
  double mean = 0.0;
  double variance = 0.0;     // population (1/n) central second moment
  double mean_se = 0.0;      // sqrt(variance / n)
  double variance_se = 0.0;  // sqrt((m4 - variance^2) / n)
};

StepMoments ones_step_monte_carlo(std::size_t s, std::size_t ones, double insert_prob, std::uint64_t trials,
                                  std::uint64_t seed);
StepMoments ones_step_monte_carlo_serial(std::size_t s, std::size_t ones, double insert_prob,
                                         std::uint64_t trials, std::uint64_t seed);

}  // namespace rsbf::kernels
