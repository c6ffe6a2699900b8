#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mag/error.hpp"

namespace mag {

namespace detail {

constexpr std::array<std::uint8_t, 256> make_reverse_table() {
  std::array<std::uint8_t, 256> table{};
  for (unsigned v = 0; v < 256; ++v) {
    unsigned r = 0;
    for (int b = 0; b < 8; ++b)
      if (v & (1u << b)) r |= 0x80u >> b;
    table[v] = static_cast<std::uint8_t>(r);
  }
  return table;
}

inline constexpr auto kReverseByte = make_reverse_table();

}  // namespace detail

// Length-carrying packed bit sequence.
//
// In memory, bit j lives in word j / 64 at position j % 64 (LSB first), which
// keeps popcount and set-bit scans word parallel. The serialized form is MSB
// first within each byte with zero padding in the final byte; to_bytes() and
// from_bytes() convert between the two.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t bit_length)
      : size_(bit_length), words_((bit_length + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  std::size_t byte_size() const noexcept { return (size_ + 7) / 8; }

  bool test(std::size_t j) const {
    check(j);
    return (words_[j >> 6] >> (j & 63)) & 1u;
  }

  void set(std::size_t j, bool value = true) {
    check(j);
    const std::uint64_t mask = std::uint64_t{1} << (j & 63);
    if (value)
      words_[j >> 6] |= mask;
    else
      words_[j >> 6] &= ~mask;
  }

  void reset(std::size_t j) { set(j, false); }

  // Sets every bit in [0, size()).
  void fill() {
    std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
    clear_tail();
  }

  std::size_t count() const noexcept {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  // Calls fn(j) for every set bit j in increasing order.
  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        fn(w * 64 + static_cast<std::size_t>(bit));
        word &= word - 1;
      }
    }
  }

  // Copies len bits from src starting at src_pos into this string at dst_pos.
  void copy_from(const BitString& src, std::size_t src_pos, std::size_t dst_pos,
                 std::size_t len) {
    if (src_pos + len > src.size_ || dst_pos + len > size_)
      throw Error(ErrorKind::Range, "bit range copy out of bounds");
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t s = src_pos + i;
      const std::size_t d = dst_pos + i;
      const std::uint64_t bit = (src.words_[s >> 6] >> (s & 63)) & 1u;
      words_[d >> 6] = (words_[d >> 6] & ~(std::uint64_t{1} << (d & 63))) |
                       (bit << (d & 63));
    }
  }

  std::vector<std::uint8_t> to_bytes() const {
    std::vector<std::uint8_t> out(byte_size());
    for (std::size_t j = 0; j < out.size(); ++j) {
      const auto lsb_first =
          static_cast<std::uint8_t>(words_[j >> 3] >> (8 * (j & 7)));
      out[j] = detail::kReverseByte[lsb_first];
    }
    return out;
  }

  void append_bytes_to(std::vector<std::uint8_t>& out) const {
    const auto bytes = to_bytes();
    out.insert(out.end(), bytes.begin(), bytes.end());
  }

  // Parses an MSB-first payload of exactly byte_size(bit_length) bytes.
  // Nonzero padding bits are rejected so byte equality implies bit equality.
  static BitString from_bytes(std::span<const std::uint8_t> bytes,
                              std::size_t bit_length) {
    const std::size_t expected = (bit_length + 7) / 8;
    if (bytes.size() != expected)
      throw Error(ErrorKind::Length,
                  "payload has " + std::to_string(bytes.size()) +
                      " bytes, expected " + std::to_string(expected));
    if (bit_length % 8 != 0 && expected > 0) {
      const unsigned pad = 8 - static_cast<unsigned>(bit_length % 8);
      const std::uint8_t pad_mask = static_cast<std::uint8_t>((1u << pad) - 1);
      if (bytes.back() & pad_mask)
        throw Error(ErrorKind::Canonicality, "nonzero padding bits in final byte");
    }
    BitString result(bit_length);
    for (std::size_t j = 0; j < expected; ++j) {
      const std::uint64_t lsb_first = detail::kReverseByte[bytes[j]];
      result.words_[j >> 3] |= lsb_first << (8 * (j & 7));
    }
    return result;
  }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  void check(std::size_t j) const {
    if (j >= size_)
      throw Error(ErrorKind::Range, "bit index " + std::to_string(j) +
                                        " out of range " + std::to_string(size_));
  }

  void clear_tail() {
    if (size_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace mag
