#pragma once

// Serialization of characteristic strings.
//
//   .mcs  binary:  "MCS1" | varint p | varint n_1 .. n_p | packed edge bits
//   .magt text:    "mag p n_1 .. n_p" then one "e a_1 .. a_p b_1 .. b_p" line
//                  per present edge, in rank order
//
// Varints are unsigned LEB128 (7 data bits per byte, least significant group
// first). Edge bits are MSB first with zero padding in the final byte.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mag/bitstring.hpp"
#include "mag/core.hpp"
#include "mag/error.hpp"

namespace mag {

inline constexpr std::string_view kMcsMagic = "MCS1";

inline void write_varint(std::vector<std::uint8_t>& out, std::uint64_t value) {
  while (value >= 0x80) {
    out.push_back(static_cast<std::uint8_t>((value & 0x7f) | 0x80));
    value >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(value));
}

inline std::size_t varint_size(std::uint64_t value) {
  std::size_t n = 1;
  while (value >= 0x80) {
    value >>= 7;
    ++n;
  }
  return n;
}

// Sequential reader over an in-memory byte stream. All failures are
// classified: running off the end is a Length error, malformed content a
// Format or Canonicality error.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
  std::size_t position() const noexcept { return pos_; }

  void expect_magic(std::string_view magic) {
    if (remaining() < magic.size())
      throw Error(ErrorKind::Length, "stream too short for magic");
    for (std::size_t i = 0; i < magic.size(); ++i)
      if (bytes_[pos_ + i] != static_cast<std::uint8_t>(magic[i]))
        throw Error(ErrorKind::Format,
                    "bad magic, expected \"" + std::string(magic) + "\"");
    pos_ += magic.size();
  }

  std::uint8_t byte() {
    if (remaining() < 1) throw Error(ErrorKind::Length, "unexpected end of stream");
    return bytes_[pos_++];
  }

  std::uint64_t varint() {
    std::uint64_t value = 0;
    for (unsigned shift = 0;; shift += 7) {
      if (remaining() < 1) throw Error(ErrorKind::Length, "truncated varint");
      const std::uint8_t b = bytes_[pos_++];
      const std::uint64_t group = b & 0x7f;
      if (shift == 63 && group > 1)
        throw Error(ErrorKind::Format, "varint exceeds 64 bits");
      value |= group << shift;
      if (!(b & 0x80)) {
        if (b == 0 && shift > 0)
          throw Error(ErrorKind::Canonicality, "overlong varint encoding");
        return value;
      }
      if (shift >= 63) throw Error(ErrorKind::Format, "varint exceeds 64 bits");
    }
  }

  std::span<const std::uint8_t> rest() {
    auto out = bytes_.subspan(pos_);
    pos_ = bytes_.size();
    return out;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

inline void append_magic(std::vector<std::uint8_t>& out, std::string_view magic) {
  out.insert(out.end(), magic.begin(), magic.end());
}

inline std::vector<std::uint8_t> write_mcs(const SimpleMag& g) {
  std::vector<std::uint8_t> out;
  out.reserve(kMcsMagic.size() + 16 + g.characteristic_string().byte_size());
  append_magic(out, kMcsMagic);
  write_varint(out, g.shape().order());
  for (auto n : g.shape().sizes()) write_varint(out, n);
  g.characteristic_string().append_bytes_to(out);
  return out;
}

inline SimpleMag read_mcs(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  in.expect_magic(kMcsMagic);
  const std::uint64_t order = in.varint();
  if (order == 0) throw Error(ErrorKind::Format, "MAG order must be at least 1");
  if (order > in.remaining())
    throw Error(ErrorKind::Length, "stream too short for " + std::to_string(order) +
                                       " aspect sizes");
  std::vector<Index> sizes(static_cast<std::size_t>(order));
  for (auto& n : sizes) {
    n = in.varint();
    if (n == 0) throw Error(ErrorKind::Format, "aspect size must be positive");
  }
  CompanionTuple shape(std::move(sizes));
  const Index m = possible_edge_count(shape);
  const Index expected = m / 8 + (m % 8 != 0);
  if (in.remaining() != expected)
    throw Error(ErrorKind::Length, "edge payload has " + std::to_string(in.remaining()) +
                                       " bytes, shape " + shape.to_string() + " needs " +
                                       std::to_string(expected));
  auto bits = BitString::from_bytes(in.rest(), static_cast<std::size_t>(m));
  return SimpleMag::from_characteristic_string(std::move(shape), std::move(bits));
}

inline std::string write_magt(const SimpleMag& g) {
  std::ostringstream out;
  out << "mag " << g.shape().order();
  for (auto n : g.shape().sizes()) out << ' ' << n;
  out << '\n';
  const Index n = g.vertex_count();
  const auto& shape = g.shape();
  g.characteristic_string().for_each_set([&](std::size_t r) {
    const auto [a, b] = pair_from_rank(n, r);
    const auto u = vertex_from_index(shape, a);
    const auto v = vertex_from_index(shape, b);
    out << 'e';
    for (auto c : u.coords) out << ' ' << c;
    for (auto c : v.coords) out << ' ' << c;
    out << '\n';
  });
  return out.str();
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

inline std::uint64_t parse_uint(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) +
                                      ": expected a non-negative integer, got \"" +
                                      std::string(token) + "\"");
  return value;
}

}  // namespace detail

inline SimpleMag read_magt(std::string_view text) {
  std::optional<SimpleMag> g;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    const auto tokens = detail::split_ws(line);
    if (tokens.empty()) continue;

    const auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    if (!g) {
      if (tokens[0] != "mag")
        throw Error(ErrorKind::Parse, where() + "expected header \"mag p n_1 ... n_p\"");
      if (tokens.size() < 2) throw Error(ErrorKind::Parse, where() + "missing order");
      const auto order = detail::parse_uint(tokens[1], line_no);
      if (order == 0 || tokens.size() != order + 2)
        throw Error(ErrorKind::Parse, where() + "header must list exactly p aspect sizes");
      std::vector<Index> sizes;
      for (std::size_t i = 2; i < tokens.size(); ++i)
        sizes.push_back(detail::parse_uint(tokens[i], line_no));
      try {
        g.emplace(CompanionTuple(std::move(sizes)));
      } catch (const Error& e) {
        throw Error(ErrorKind::Parse, where() + e.what());
      }
      continue;
    }

    const std::size_t order = g->shape().order();
    if (tokens[0] != "e" || tokens.size() != 1 + 2 * order)
      throw Error(ErrorKind::Parse, where() + "expected \"e\" followed by " +
                                        std::to_string(2 * order) + " coordinates");
    CompositeVertex u, v;
    for (std::size_t i = 0; i < order; ++i) {
      u.coords.push_back(detail::parse_uint(tokens[1 + i], line_no));
      v.coords.push_back(detail::parse_uint(tokens[1 + order + i], line_no));
    }
    Index r = 0;
    try {
      r = edge_rank(g->shape(), CompositeEdge{u, v});
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, where() + e.what());
    }
    if (g->has_rank(r)) throw Error(ErrorKind::Duplicate, where() + "duplicate edge");
    g->set_rank(r);
  }
  if (!g) throw Error(ErrorKind::Parse, "missing \"mag\" header");
  return std::move(*g);
}

}  // namespace mag
