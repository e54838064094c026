#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace rsbf {

// Named sub-streams split from a single run seed. Changing how one component
// consumes randomness never perturbs the draws of another.
enum class SeedStream : std::uint32_t {
  kHashing = 1,
  kReservoir = 2,
  kDeletion = 3,
  kGenerator = 4,
  kSbfDecrement = 5,
  kMonteCarlo = 6,
};

std::uint64_t derive_seed(std::uint64_t master, SeedStream stream, std::uint64_t index = 0);

// mt19937_64 with portable conversions. std::uniform_*_distribution are
// implementation-defined, so draws are done here to keep runs reproducible
// across standard libraries.
class Rng {
 public:
  Rng() = default;
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound); bound must be > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound);

  std::string save() const;
  void load(std::string_view state);

  friend bool operator==(const Rng& x, const Rng& y) { return x.engine_ == y.engine_; }

 private:
  std::mt19937_64 engine_{5489u};
};

}  // namespace rsbf
