#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsbf {

// A sequence of byte-string elements held in one contiguous buffer. Either
// fixed-width records (generated and binary input) or variable-length ones
// (line input).
class ElementStream {
 public:
  ElementStream() = default;

  static ElementStream fixed_width(std::string bytes, std::size_t width);
  static ElementStream from_elements(const std::vector<std::string>& elements);

  void push_back(std::string_view element);

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::string_view operator[](std::size_t i) const;

  // Record width for fixed-width streams, 0 for variable-length ones.
  std::size_t record_width() const { return width_; }
  std::string_view bytes() const { return data_; }

 private:
  std::string data_;
  std::size_t width_ = 0;
  std::vector<std::size_t> offsets_{0};  // variable-length only; size() + 1 entries
};

inline constexpr std::size_t kRecordBytes = 8;

// Uniform draws from {0 .. U-1}, each encoded as an 8-byte little-endian record.
// An empty universe means "draw without replacement": every element distinct.
struct StreamSpec {
  std::uint64_t length = 0;
  std::optional<std::uint64_t> universe;
  std::uint64_t seed = 0;
};

ElementStream generate(const StreamSpec& spec);

// (U/m)(1 - (1 - 1/U)^m): expected fraction of distinct values among m
// uniform draws from a universe of U.
double expected_distinct_fraction(std::uint64_t length, std::uint64_t universe);

// Smallest U whose expected distinct fraction reaches `distinct_fraction`;
// nullopt (without replacement) for a fraction of exactly 1.
std::optional<std::uint64_t> solve_universe(std::uint64_t length, double distinct_fraction);

std::string encode_record(std::uint64_t value);
std::uint64_t decode_record(std::string_view record);

// One element per line, terminator ("\n") stripped; a final line without a
// terminator still counts.
ElementStream ingest_lines(const std::filesystem::path& path);

// Consecutive 8-byte records; a trailing partial record is an IoError.
ElementStream ingest_binary(const std::filesystem::path& path);

void write_binary(const std::filesystem::path& path, const ElementStream& stream);

// Exact "seen before?" labels for every element.
std::vector<bool> duplicate_labels(const ElementStream& stream);

}  // namespace rsbf
