#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <new>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mag/bitstring.hpp"
#include "mag/error.hpp"

namespace mag {

using Index = std::uint64_t;

namespace detail {

inline Index checked_mul(Index a, Index b, const char* what) {
  Index out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw Error(ErrorKind::Overflow, std::string(what) + " overflows 64-bit index range");
  return out;
}

// n(n-1)/2 without intermediate overflow.
inline Index checked_pairs(Index n, const char* what) {
  if (n < 2) return 0;
  const Index a = (n % 2 == 0) ? n / 2 : n;
  const Index b = (n % 2 == 0) ? n - 1 : (n - 1) / 2;
  return checked_mul(a, b, what);
}

}  // namespace detail

// Aspect sizes (n_1, ..., n_p) of a MAG. Fixes the composite vertex set and
// every canonical ordering derived from it.
class CompanionTuple {
 public:
  CompanionTuple() : CompanionTuple({1}) {}
  CompanionTuple(std::initializer_list<Index> sizes)
      : CompanionTuple(std::vector<Index>(sizes)) {}
  explicit CompanionTuple(std::vector<Index> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty())
      throw Error(ErrorKind::Argument, "companion tuple needs at least one aspect");
    vertex_count_ = 1;
    for (auto n : sizes_) {
      if (n == 0) throw Error(ErrorKind::Argument, "aspect sizes must be positive");
      vertex_count_ = detail::checked_mul(vertex_count_, n, "composite vertex count");
    }
  }

  std::size_t order() const noexcept { return sizes_.size(); }
  std::span<const Index> sizes() const noexcept { return sizes_; }
  Index operator[](std::size_t aspect) const { return sizes_.at(aspect); }

  // N = n_1 * ... * n_p
  Index vertex_count() const noexcept { return vertex_count_; }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(sizes_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const CompanionTuple& a, const CompanionTuple& b) {
    return a.sizes_ == b.sizes_;
  }

 private:
  std::vector<Index> sizes_;
  Index vertex_count_ = 1;
};

struct CompositeVertex {
  std::vector<Index> coords;

  CompositeVertex() = default;
  CompositeVertex(std::initializer_list<Index> c) : coords(c) {}
  explicit CompositeVertex(std::vector<Index> c) : coords(std::move(c)) {}

  friend bool operator==(const CompositeVertex&, const CompositeVertex&) = default;
};

// Unordered pair of distinct composite vertices, stored with the smaller
// vertex index in u. Use make_edge() to get the normalized form.
struct CompositeEdge {
  CompositeVertex u;
  CompositeVertex v;

  friend bool operator==(const CompositeEdge&, const CompositeEdge&) = default;
};

// Mixed-radix index, first aspect varying fastest.
inline Index vertex_index(const CompanionTuple& shape, const CompositeVertex& v) {
  if (v.coords.size() != shape.order())
    throw Error(ErrorKind::ShapeMismatch,
                "vertex has " + std::to_string(v.coords.size()) +
                    " coordinates, shape " + shape.to_string() + " has order " +
                    std::to_string(shape.order()));
  Index idx = 0;
  Index stride = 1;
  for (std::size_t i = 0; i < shape.order(); ++i) {
    if (v.coords[i] >= shape[i])
      throw Error(ErrorKind::ShapeMismatch,
                  "coordinate " + std::to_string(v.coords[i]) + " of aspect " +
                      std::to_string(i + 1) + " out of range for shape " +
                      shape.to_string());
    idx += v.coords[i] * stride;
    stride *= shape[i];
  }
  return idx;
}

inline CompositeVertex vertex_from_index(const CompanionTuple& shape, Index idx) {
  if (idx >= shape.vertex_count())
    throw Error(ErrorKind::Range, "vertex index " + std::to_string(idx) +
                                      " out of range for shape " + shape.to_string());
  CompositeVertex v;
  v.coords.resize(shape.order());
  for (std::size_t i = 0; i < shape.order(); ++i) {
    v.coords[i] = idx % shape[i];
    idx /= shape[i];
  }
  return v;
}

// Coordinate of aspect `aspect` (0-based) of the vertex with index idx, without
// materializing the whole tuple.
inline Index aspect_coord(const CompanionTuple& shape, Index idx, std::size_t aspect) {
  for (std::size_t i = 0; i < aspect; ++i) idx /= shape[i];
  return idx % shape[aspect];
}

// (N^2 - N) / 2
inline Index possible_edge_count(const CompanionTuple& shape) {
  return detail::checked_pairs(shape.vertex_count(), "possible edge count");
}

// Rank of the first pair whose smaller endpoint is a: a*N - a(a+1)/2.
inline Index pair_row_start(Index n, Index a) {
  using u128 = unsigned __int128;
  const u128 v = static_cast<u128>(a) * n - (static_cast<u128>(a) * (a + 1)) / 2;
  return static_cast<Index>(v);
}

// Lexicographic rank of the unordered pair a < b among all pairs over [0, n).
inline Index pair_rank(Index n, Index a, Index b) {
  if (a == b) throw Error(ErrorKind::SelfLoop, "self-loop at vertex " + std::to_string(a));
  if (a > b) std::swap(a, b);
  if (b >= n)
    throw Error(ErrorKind::Range, "vertex index " + std::to_string(b) +
                                      " out of range " + std::to_string(n));
  return pair_row_start(n, a) + (b - a - 1);
}

inline std::pair<Index, Index> pair_from_rank(Index n, Index r) {
  const Index m = detail::checked_pairs(n, "possible edge count");
  if (r >= m)
    throw Error(ErrorKind::Range,
                "edge rank " + std::to_string(r) + " out of range " + std::to_string(m));
  // Closed form for the row, then correct for floating point error.
  const long double c = 2.0L * static_cast<long double>(n) - 1.0L;
  const long double disc = c * c - 8.0L * static_cast<long double>(r);
  long double guess = (c - std::sqrt(disc > 0 ? disc : 0.0L)) / 2.0L;
  if (guess < 0) guess = 0;
  Index a = static_cast<Index>(guess);
  if (a > n - 2) a = n - 2;
  while (a > 0 && pair_row_start(n, a) > r) --a;
  while (a + 1 <= n - 2 && pair_row_start(n, a + 1) <= r) ++a;
  const Index b = r - pair_row_start(n, a) + a + 1;
  return {a, b};
}

inline CompositeEdge make_edge(const CompanionTuple& shape, CompositeVertex u,
                               CompositeVertex v) {
  const Index a = vertex_index(shape, u);
  const Index b = vertex_index(shape, v);
  if (a == b) throw Error(ErrorKind::SelfLoop, "composite edge endpoints coincide");
  if (a > b) std::swap(u, v);
  return {std::move(u), std::move(v)};
}

inline Index edge_rank(const CompanionTuple& shape, const CompositeEdge& e) {
  return pair_rank(shape.vertex_count(), vertex_index(shape, e.u), vertex_index(shape, e.v));
}

inline CompositeEdge edge_from_rank(const CompanionTuple& shape, Index r) {
  const auto [a, b] = pair_from_rank(shape.vertex_count(), r);
  return {vertex_from_index(shape, a), vertex_from_index(shape, b)};
}

// A simple (undirected, loop-free) MAG stored as its characteristic string:
// bit r is set iff edge_from_rank(shape, r) is present.
class SimpleMag {
 public:
  SimpleMag() : SimpleMag(CompanionTuple{1}) {}
  explicit SimpleMag(CompanionTuple shape)
      : shape_(std::move(shape)), bits_(checked_bits(possible_edge_count(shape_))) {}

  static SimpleMag from_characteristic_string(CompanionTuple shape, BitString bits) {
    const Index m = possible_edge_count(shape);
    if (bits.size() != m)
      throw Error(ErrorKind::Length, "characteristic string has " +
                                         std::to_string(bits.size()) + " bits, shape " +
                                         shape.to_string() + " needs " + std::to_string(m));
    SimpleMag g;
    g.shape_ = std::move(shape);
    g.bits_ = std::move(bits);
    return g;
  }

  const CompanionTuple& shape() const noexcept { return shape_; }
  Index vertex_count() const noexcept { return shape_.vertex_count(); }
  Index position_count() const noexcept { return bits_.size(); }
  const BitString& characteristic_string() const noexcept { return bits_; }

  Index edge_count() const noexcept { return bits_.count(); }

  bool has_pair(Index a, Index b) const {
    return bits_.test(pair_rank(vertex_count(), a, b));
  }
  void set_pair(Index a, Index b, bool present = true) {
    bits_.set(pair_rank(vertex_count(), a, b), present);
  }

  bool has_edge(const CompositeEdge& e) const { return bits_.test(edge_rank(shape_, e)); }
  void set_edge(const CompositeEdge& e, bool present = true) {
    bits_.set(edge_rank(shape_, e), present);
  }

  bool has_rank(Index r) const { return bits_.test(r); }
  void set_rank(Index r, bool present = true) { bits_.set(r, present); }

  void fill() { bits_.fill(); }

  std::vector<CompositeEdge> edges() const {
    std::vector<CompositeEdge> out;
    out.reserve(edge_count());
    bits_.for_each_set([&](std::size_t r) { out.push_back(edge_from_rank(shape_, r)); });
    return out;
  }

  friend bool operator==(const SimpleMag&, const SimpleMag&) = default;

 private:
  // Upper bound on characteristic string length (bits) accepted in memory.
  static constexpr Index kMaxPositions = Index{1} << 36;

  static BitString checked_bits(Index m) {
    if (m > kMaxPositions || m > std::numeric_limits<std::size_t>::max() - 64)
      throw Error(ErrorKind::Overflow, "characteristic string of " + std::to_string(m) +
                                           " bits is too long for this platform");
    try {
      return BitString(static_cast<std::size_t>(m));
    } catch (const std::bad_alloc&) {
      throw Error(ErrorKind::Overflow, "cannot allocate characteristic string of " +
                                           std::to_string(m) + " bits");
    }
  }

  CompanionTuple shape_;
  BitString bits_;
};

using ClassicalEdge = std::pair<Index, Index>;

// Edge list of the isomorphic classical graph on [0, N), in rank order with
// the smaller endpoint first.
inline std::vector<ClassicalEdge> to_classical_graph(const SimpleMag& g) {
  std::vector<ClassicalEdge> out;
  out.reserve(g.edge_count());
  const Index n = g.vertex_count();
  g.characteristic_string().for_each_set(
      [&](std::size_t r) { out.push_back(pair_from_rank(n, r)); });
  return out;
}

}  // namespace mag
