#include "rsbf/random.hpp"

#include <sstream>
#include <stdexcept>

namespace rsbf {

std::uint64_t derive_seed(std::uint64_t master, SeedStream stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t words[2];
  seq.generate(std::begin(words), std::end(words));
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

std::uint64_t Rng::below(std::uint64_t bound) {
  unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::string Rng::save() const {
  std::ostringstream os;
  os << engine_;
  return std::move(os).str();
}

void Rng::load(std::string_view state) {
  std::istringstream is{std::string(state)};
  std::mt19937_64 engine;
  is >> engine;
  if (is.fail()) throw std::invalid_argument("malformed RNG state");
  engine_ = engine;
}

}  // namespace rsbf
