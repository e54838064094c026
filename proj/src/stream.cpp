#include "rsbf/stream.hpp"

#include "rsbf/errors.hpp"
#include "rsbf/oracle.hpp"
#include "rsbf/random.hpp"

#include <cassert>
#include <cmath>
#include <fstream>
#include <iterator>

namespace rsbf {

ElementStream ElementStream::fixed_width(std::string bytes, std::size_t width) {
  if (width == 0 || bytes.size() % width != 0) {
    throw ValidationError("fixed-width stream bytes are not a whole number of records");
  }
  ElementStream s;
  s.data_ = std::move(bytes);
  s.width_ = width;
  s.offsets_.clear();
  return s;
}

ElementStream ElementStream::from_elements(const std::vector<std::string>& elements) {
  ElementStream s;
  for (const auto& e : elements) s.push_back(e);
  return s;
}

void ElementStream::push_back(std::string_view element) {
  if (width_ != 0) {
    if (element.size() != width_) throw ValidationError("element width does not match the stream");
    data_.append(element);
    return;
  }
  data_.append(element);
  offsets_.push_back(data_.size());
}

std::size_t ElementStream::size() const {
  return width_ != 0 ? data_.size() / width_ : offsets_.size() - 1;
}

std::string_view ElementStream::operator[](std::size_t i) const {
  if (width_ != 0) return std::string_view(data_).substr(i * width_, width_);
  return std::string_view(data_).substr(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

std::string encode_record(std::uint64_t value) {
  std::string out(kRecordBytes, '\0');
  for (std::size_t i = 0; i < kRecordBytes; ++i) out[i] = static_cast<char>(value >> (8 * i));
  return out;
}

std::uint64_t decode_record(std::string_view record) {
  assert(record.size() == kRecordBytes);
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < kRecordBytes; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(record[i])) << (8 * i);
  }
  return v;
}

namespace {

// splitmix64 finalizer: a bijection on 64-bit values.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void append_record(std::string& out, std::uint64_t value) {
  for (std::size_t i = 0; i < kRecordBytes; ++i) out.push_back(static_cast<char>(value >> (8 * i)));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + path.string());
  return data;
}

}  // namespace

ElementStream generate(const StreamSpec& spec) {
  if (spec.length < 1) throw ValidationError("stream length must be at least 1");
  if (spec.universe && *spec.universe < 1) throw ValidationError("universe size must be at least 1");

  Rng rng(derive_seed(spec.seed, SeedStream::kGenerator));
  std::string bytes;
  bytes.reserve(spec.length * kRecordBytes);
  if (spec.universe) {
    for (std::uint64_t i = 0; i < spec.length; ++i) append_record(bytes, rng.below(*spec.universe));
  } else {
    const std::uint64_t offset = rng.next();
    for (std::uint64_t i = 0; i < spec.length; ++i) append_record(bytes, mix64(offset + i));
  }
  return ElementStream::fixed_width(std::move(bytes), kRecordBytes);
}

double expected_distinct_fraction(std::uint64_t length, std::uint64_t universe) {
  const double m = static_cast<double>(length);
  const double u = static_cast<double>(universe);
  return (u / m) * -std::expm1(m * std::log1p(-1.0 / u));
}

std::optional<std::uint64_t> solve_universe(std::uint64_t length, double distinct_fraction) {
  if (length < 1) throw ValidationError("stream length must be at least 1");
  if (!(distinct_fraction > 0.0 && distinct_fraction <= 1.0)) {
    throw ValidationError("distinct fraction must lie in (0, 1]");
  }
  if (distinct_fraction == 1.0) return std::nullopt;

  std::uint64_t hi = 1;
  while (expected_distinct_fraction(length, hi) < distinct_fraction) {
    if (hi > (std::uint64_t{1} << 62)) throw ValidationError("distinct fraction too close to 1 for this length");
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;  // f(lo) < d unless hi == 1
  if (hi == 1) return 1;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (expected_distinct_fraction(length, mid) >= distinct_fraction) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

ElementStream ingest_lines(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  ElementStream stream;
  std::size_t start = 0;
  while (start < data.size()) {
    std::size_t end = data.find('\n', start);
    if (end == std::string::npos) end = data.size();
    stream.push_back(std::string_view(data).substr(start, end - start));
    start = end + 1;
  }
  return stream;
}

ElementStream ingest_binary(const std::filesystem::path& path) {
  std::string data = read_file(path);
  if (data.size() % kRecordBytes != 0) {
    throw IoError(path.string() + ": trailing partial record (" + std::to_string(data.size() % kRecordBytes) +
                  " bytes)");
  }
  return ElementStream::fixed_width(std::move(data), kRecordBytes);
}

void write_binary(const std::filesystem::path& path, const ElementStream& stream) {
  if (!stream.empty() && stream.record_width() != kRecordBytes) {
    throw ValidationError("binary output needs 8-byte records");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(stream.bytes().data(), static_cast<std::streamsize>(stream.bytes().size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<bool> duplicate_labels(const ElementStream& stream) {
  ExactOracle oracle(stream.size());
  std::vector<bool> labels(stream.size());
  for (std::size_t i = 0; i < stream.size(); ++i) labels[i] = oracle.observe(stream[i]);
  return labels;
}

}  // namespace rsbf
