#include "rsbf/hashing.hpp"

#include <sodium.h>

#include <array>
#include <cstring>

namespace rsbf {

namespace {

void store_le64(unsigned char* out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(v >> (8 * i));
}

std::uint64_t load_le64(const unsigned char* in) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[i]) << (8 * i);
  return v;
}

}  // namespace

ElementDigest digest(std::string_view element, std::uint64_t seed) noexcept {
  std::array<unsigned char, crypto_shorthash_siphashx24_KEYBYTES> key{};
  store_le64(key.data(), seed);
  store_le64(key.data() + 8, seed ^ 0x9e3779b97f4a7c15ULL);

  std::array<unsigned char, crypto_shorthash_siphashx24_BYTES> out{};
  // siphashx24 never fails; it is a pure function of (in, key).
  crypto_shorthash_siphashx24(out.data(), reinterpret_cast<const unsigned char*>(element.data()),
                              element.size(), key.data());
  return ElementDigest{load_le64(out.data()), load_le64(out.data() + 8) | 1ULL};
}

void positions(const ElementDigest& d, std::size_t s, std::span<std::size_t> out) noexcept {
  const std::uint64_t mod = s;
  std::uint64_t pos = d.a % mod;
  const std::uint64_t step = d.b % mod;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::size_t>(pos);
    // pos, step < mod <= 2^64-1; subtract instead of add to stay in range.
    pos = (pos >= mod - step) ? pos - (mod - step) : pos + step;
  }
}

std::vector<std::size_t> positions(const ElementDigest& d, std::size_t k, std::size_t s) {
  std::vector<std::size_t> out(k);
  positions(d, s, out);
  return out;
}

}  // namespace rsbf
