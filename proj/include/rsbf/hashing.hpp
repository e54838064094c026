#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace rsbf {

// Identifier written into every report header so runs can be reproduced.
inline constexpr std::string_view kHashFamily = "siphashx24-128/libsodium;double-hashing(a+i*b mod s)";

// Two 64-bit digests of an element. `b` is always odd so that the stride
// a + i*b visits distinct residues whenever gcd(b, s) == 1, and never
// degenerates to a zero step on power-of-two sizes.
struct ElementDigest {
  std::uint64_t a = 0;
  std::uint64_t b = 1;

  friend bool operator==(const ElementDigest&, const ElementDigest&) = default;
};

// Seeded 128-bit SipHash-x24 of the element bytes, split into (a, b | 1).
ElementDigest digest(std::string_view element, std::uint64_t seed) noexcept;

// position[i] = (a + i*b) mod s, evaluated exactly (no 64-bit wraparound).
void positions(const ElementDigest& d, std::size_t s, std::span<std::size_t> out) noexcept;

std::vector<std::size_t> positions(const ElementDigest& d, std::size_t k, std::size_t s);

}  // namespace rsbf
