#pragma once

// Lossless compression of spatial (snapshot-like) second-order MAGs.
//
// With first-aspect-fastest vertex indexing, the spatial edges of time
// instant t are exactly the pairs inside the index block [t*|V|, (t+1)*|V|),
// and they appear in the characteristic string in the same relative order as
// the lexicographic pairs of a single |V|-vertex snapshot. Encoding is
// therefore a gather of contiguous runs, and the payload holds one block of
// (|V|^2 - |V|)/2 bits per time instant (or layer).
//
//   .msc binary: "MSC1" | varint |V| | varint |T| | flags | packed blocks
//
// flags bit 0 marks that sequential couplings (u,t_i)-(u,t_{i+1}) are implied
// and re-created on decode. The remaining flag bits must be zero.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mag/bitstring.hpp"
#include "mag/charstring.hpp"
#include "mag/core.hpp"
#include "mag/error.hpp"

namespace mag {

inline constexpr std::string_view kMscMagic = "MSC1";

struct SnapshotPayload {
  Index vertices = 1;
  Index times = 1;
  bool couplings = false;
  BitString blocks;

  friend bool operator==(const SnapshotPayload&, const SnapshotPayload&) = default;
};

// Bits per snapshot block: (|V|^2 - |V|) / 2.
inline Index block_bit_count(Index vertices) {
  return detail::checked_pairs(vertices, "snapshot block size");
}

// |T| (|V|^2 - |V|) / 2
inline Index spatial_position_count(Index vertices, Index times) {
  return detail::checked_mul(times, block_bit_count(vertices), "spatial position count");
}

// Raised when a present edge has no place in the snapshot payload.
class SnapshotViolation : public Error {
 public:
  SnapshotViolation(CompositeEdge edge, const std::string& message)
      : Error(ErrorKind::NotSnapshot, message), edge_(std::move(edge)) {}

  const CompositeEdge& edge() const noexcept { return edge_; }

 private:
  CompositeEdge edge_;
};

namespace detail {

inline void require_order2(const CompanionTuple& shape, const char* what) {
  if (shape.order() != 2)
    throw Error(ErrorKind::ShapeMismatch, std::string(what) + " needs an order-2 MAG, got " +
                                              shape.to_string());
}

// Vertex indices a, b under shape (|V|, |T|).
inline bool spatial_pair(Index nv, Index a, Index b) { return a / nv == b / nv; }

inline bool sequential_coupling_pair(Index nv, Index a, Index b) {
  if (a > b) std::swap(a, b);
  return a % nv == b % nv && b / nv == a / nv + 1;
}

}  // namespace detail

inline bool is_spatial(const CompanionTuple& shape, const CompositeEdge& e) {
  detail::require_order2(shape, "spatial edge test");
  return detail::spatial_pair(shape[0], vertex_index(shape, e.u), vertex_index(shape, e.v));
}

inline bool is_sequential_coupling(const CompanionTuple& shape, const CompositeEdge& e) {
  detail::require_order2(shape, "sequential coupling test");
  return detail::sequential_coupling_pair(shape[0], vertex_index(shape, e.u),
                                          vertex_index(shape, e.v));
}

struct SnapshotOptions {
  // Drop every non-spatial edge instead of rejecting it.
  bool strip_non_spatial = false;
  // Treat sequential couplings as implied: accept them without storing them
  // and set the payload flag so decode re-creates all of them.
  bool implied_couplings = false;
};

namespace detail {

// Runs of contiguous ranks: for every time block t and local vertex a, the
// spatial partners b > a of vertex t*|V| + a occupy |V| - a - 1 consecutive
// ranks in the MAG and consecutive positions in block t of the payload.
template <typename Fn>
void for_each_spatial_run(Index nv, Index nt, Fn&& fn) {
  const Index n = nv * nt;
  const Index block = block_bit_count(nv);
  for (Index t = 0; t < nt; ++t) {
    for (Index a = 0; a + 1 < nv; ++a) {
      const Index global = t * nv + a;
      fn(pair_row_start(n, global), t * block + pair_row_start(nv, a), nv - a - 1);
    }
  }
}

}  // namespace detail

inline SnapshotPayload encode_snapshot(const SimpleMag& g, SnapshotOptions options = {}) {
  const auto& shape = g.shape();
  detail::require_order2(shape, "snapshot encoding");
  const Index nv = shape[0];
  const Index nt = shape[1];

  if (!options.strip_non_spatial) {
    const Index n = g.vertex_count();
    g.characteristic_string().for_each_set([&](std::size_t r) {
      const auto [a, b] = pair_from_rank(n, r);
      if (detail::spatial_pair(nv, a, b)) return;
      if (options.implied_couplings && detail::sequential_coupling_pair(nv, a, b)) return;
      auto edge = edge_from_rank(shape, r);
      std::string text = "e";
      for (auto c : edge.u.coords) text += ' ' + std::to_string(c);
      for (auto c : edge.v.coords) text += ' ' + std::to_string(c);
      throw SnapshotViolation(std::move(edge), "non-spatial edge present: " + text);
    });
  }

  SnapshotPayload p;
  p.vertices = nv;
  p.times = nt;
  p.couplings = options.implied_couplings;
  p.blocks = BitString(spatial_position_count(nv, nt));
  const auto& x = g.characteristic_string();
  detail::for_each_spatial_run(nv, nt, [&](Index src, Index dst, Index len) {
    p.blocks.copy_from(x, src, dst, len);
  });
  return p;
}

inline SimpleMag decode_snapshot(const SnapshotPayload& p) {
  if (p.vertices == 0 || p.times == 0)
    throw Error(ErrorKind::Argument, "snapshot payload needs |V|, |T| >= 1");
  if (p.blocks.size() != spatial_position_count(p.vertices, p.times))
    throw Error(ErrorKind::Length,
                "snapshot payload has " + std::to_string(p.blocks.size()) +
                    " block bits, expected " +
                    std::to_string(spatial_position_count(p.vertices, p.times)));
  SimpleMag g(CompanionTuple{p.vertices, p.times});
  BitString x = g.characteristic_string();
  detail::for_each_spatial_run(p.vertices, p.times, [&](Index dst, Index src, Index len) {
    x.copy_from(p.blocks, src, dst, len);
  });
  if (p.couplings) {
    const Index n = g.vertex_count();
    for (Index t = 0; t + 1 < p.times; ++t)
      for (Index u = 0; u < p.vertices; ++u)
        x.set(pair_rank(n, t * p.vertices + u, (t + 1) * p.vertices + u));
  }
  return SimpleMag::from_characteristic_string(g.shape(), std::move(x));
}

inline std::vector<std::uint8_t> write_msc(const SnapshotPayload& p) {
  std::vector<std::uint8_t> out;
  out.reserve(kMscMagic.size() + 21 + p.blocks.byte_size());
  append_magic(out, kMscMagic);
  write_varint(out, p.vertices);
  write_varint(out, p.times);
  out.push_back(p.couplings ? 1 : 0);
  p.blocks.append_bytes_to(out);
  return out;
}

inline SnapshotPayload read_msc(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  in.expect_magic(kMscMagic);
  SnapshotPayload p;
  p.vertices = in.varint();
  p.times = in.varint();
  if (p.vertices == 0 || p.times == 0)
    throw Error(ErrorKind::Format, "snapshot payload needs |V|, |T| >= 1");
  const std::uint8_t flags = in.byte();
  if (flags & ~std::uint8_t{1}) throw Error(ErrorKind::Format, "unknown snapshot flag bits");
  p.couplings = flags & 1;
  const Index bits = spatial_position_count(p.vertices, p.times);
  const Index expected = bits / 8 + (bits % 8 != 0);
  if (in.remaining() != expected)
    throw Error(ErrorKind::Length, "block payload has " + std::to_string(in.remaining()) +
                                       " bytes, expected " + std::to_string(expected));
  p.blocks = BitString::from_bytes(in.rest(), static_cast<std::size_t>(bits));
  return p;
}

// Serialized .msc size in bits, computed without building the payload.
inline Index msc_size_bits(Index vertices, Index times) {
  const Index bits = spatial_position_count(vertices, times);
  const Index header = kMscMagic.size() + varint_size(vertices) + varint_size(times) + 1;
  return 8 * (header + bits / 8 + (bits % 8 != 0));
}

// Everything in an .msc file that is not block payload: header plus padding.
inline Index msc_overhead_bits(Index vertices, Index times) {
  return msc_size_bits(vertices, times) - spatial_position_count(vertices, times);
}

// ---------------------------------------------------------------------------
// Interval contraction.

// Strictly increasing chain of time pairs (i, f(i)) starting at 0:
// (0, f(0)), (f(0), f(f(0))), ..., ending at |T| - 1.
struct MonotoneIntervalMap {
  std::vector<std::pair<Index, Index>> pairs;

  static MonotoneIntervalMap successor(Index times) {
    MonotoneIntervalMap f;
    for (Index i = 0; i + 1 < times; ++i) f.pairs.emplace_back(i, i + 1);
    return f;
  }

  void validate(Index times) const {
    if (pairs.empty()) throw Error(ErrorKind::Argument, "interval map is empty");
    if (pairs.front().first != 0)
      throw Error(ErrorKind::Argument, "interval map must start at time 0");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (pairs[k].second <= pairs[k].first)
        throw Error(ErrorKind::Argument, "interval map needs f(i) > i");
      if (k + 1 < pairs.size() && pairs[k + 1].first != pairs[k].second)
        throw Error(ErrorKind::Argument,
                    "interval map must iterate f: pair " + std::to_string(k + 1) +
                        " does not start at f of the previous pair");
    }
    if (pairs.back().second != times - 1)
      throw Error(ErrorKind::Argument, "interval map must end at time |T| - 1 = " +
                                           std::to_string(times - 1));
  }
};

// Maps every edge (u, t_i)-(v, t_f(i)) to the spatial edge (u, t''_k)-(v, t''_k)
// where k is the position of (i, f(i)) in the map. Both orientations of an
// interval relation land on the same spatial edge.
inline SimpleMag contract_intervals(const SimpleMag& g, const MonotoneIntervalMap& f) {
  const auto& shape = g.shape();
  detail::require_order2(shape, "interval contraction");
  const Index nv = shape[0];
  const Index nt = shape[1];
  f.validate(nt);

  std::vector<std::optional<Index>> slot(static_cast<std::size_t>(nt));
  for (std::size_t k = 0; k < f.pairs.size(); ++k) slot[f.pairs[k].first] = k;

  SimpleMag out(CompanionTuple{nv, static_cast<Index>(f.pairs.size())});
  const Index n = g.vertex_count();
  g.characteristic_string().for_each_set([&](std::size_t r) {
    auto [a, b] = pair_from_rank(n, r);
    Index ta = a / nv, tb = b / nv;
    if (ta > tb) {
      std::swap(a, b);
      std::swap(ta, tb);
    }
    const auto k = slot[ta];
    if (!k || f.pairs[*k].second != tb || a % nv == b % nv) {
      const auto e = edge_from_rank(shape, r);
      throw Error(ErrorKind::NotIntervalRestricted,
                  "edge with times (" + std::to_string(ta) + ", " + std::to_string(tb) +
                      ") between vertices " + std::to_string(a % nv) + " and " +
                      std::to_string(b % nv) + " is not an interval edge");
    }
    out.set_pair(*k * nv + a % nv, *k * nv + b % nv);
  });
  return out;
}

// Inverse of contract_intervals on canonical inputs: the spatial edge
// {(x, t''_k), (y, t''_k)} with x < y becomes (x, t_i)-(y, t_f(i)).
inline SimpleMag expand_intervals(const SimpleMag& spatial, const MonotoneIntervalMap& f,
                                  Index times) {
  const auto& shape = spatial.shape();
  detail::require_order2(shape, "interval expansion");
  f.validate(times);
  if (shape[1] != f.pairs.size())
    throw Error(ErrorKind::ShapeMismatch, "spatial TVG has " + std::to_string(shape[1]) +
                                              " time instants, map has " +
                                              std::to_string(f.pairs.size()) + " pairs");
  const Index nv = shape[0];
  SimpleMag out(CompanionTuple{nv, times});
  const Index n = spatial.vertex_count();
  spatial.characteristic_string().for_each_set([&](std::size_t r) {
    const auto [a, b] = pair_from_rank(n, r);
    if (!detail::spatial_pair(nv, a, b))
      throw Error(ErrorKind::NotSnapshot, "contracted TVG has a non-spatial edge");
    const auto& [ti, tj] = f.pairs[a / nv];
    out.set_pair(ti * nv + a % nv, tj * nv + b % nv);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Multiplex coupling structure (second aspect read as layers).

struct CouplingVerdict {
  bool diagonal = true;
  bool categorical = true;
  bool potentially_layer_connected = true;
};

inline CouplingVerdict check_multiplex_couplings(const SimpleMag& g) {
  const auto& shape = g.shape();
  detail::require_order2(shape, "coupling check");
  const Index nv = shape[0];
  const Index nl = shape[1];
  const Index n = g.vertex_count();
  CouplingVerdict verdict;
  g.characteristic_string().for_each_set([&](std::size_t r) {
    if (!verdict.diagonal) return;
    const auto [a, b] = pair_from_rank(n, r);
    if (a / nv != b / nv && a % nv != b % nv) verdict.diagonal = false;
  });
  for (Index u = 0; u < nv && verdict.categorical; ++u)
    for (Index alpha = 0; alpha < nl && verdict.categorical; ++alpha)
      for (Index beta = alpha + 1; beta < nl; ++beta)
        if (!g.has_pair(alpha * nv + u, beta * nv + u)) {
          verdict.categorical = false;
          break;
        }
  // Node alignment puts every vertex in every layer, so categorical
  // couplings can always reach each pair of layers.
  verdict.potentially_layer_connected = true;
  return verdict;
}

}  // namespace mag
