#pragma once

// Compressor-based upper bounds on the information carried by a MAG's
// characteristic string, and the exact position-count gap between general
// and spatial second-order MAGs.
//
// Only upper bounds are ever reported: a compressed size is the length of one
// particular description, never a claim about the shortest one.

#include <lzma.h>
#include <zlib.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mag/charstring.hpp"
#include "mag/core.hpp"
#include "mag/error.hpp"
#include "mag/snapshot.hpp"
#include "mag/topo.hpp"

namespace mag {

class CompressorAdapter {
 public:
  virtual ~CompressorAdapter() = default;

  virtual std::string_view name() const = 0;
  virtual std::vector<std::uint8_t> compress(std::span<const std::uint8_t> in) const = 0;
  virtual std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> in) const = 0;
  // Fixed container bytes every output carries (headers, trailers, checks).
  virtual std::size_t min_container_bytes() const = 0;
};

// zlib container around DEFLATE (LZ77 dictionary matching + Huffman), level 9.
class DeflateAdapter final : public CompressorAdapter {
 public:
  std::string_view name() const override { return "deflate"; }
  std::size_t min_container_bytes() const override { return 6; }

  std::vector<std::uint8_t> compress(std::span<const std::uint8_t> in) const override {
    uLongf size = compressBound(static_cast<uLong>(in.size()));
    std::vector<std::uint8_t> out(size);
    const int rc = compress2(out.data(), &size, in.data(), static_cast<uLong>(in.size()),
                             Z_BEST_COMPRESSION);
    if (rc != Z_OK) throw Error(ErrorKind::Adapter, "deflate failed with code " + std::to_string(rc));
    out.resize(size);
    return out;
  }

  std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> in) const override {
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK) throw Error(ErrorKind::Adapter, "inflateInit failed");
    std::vector<std::uint8_t> out;
    std::vector<std::uint8_t> chunk(1 << 16);
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
      zs.next_out = chunk.data();
      zs.avail_out = static_cast<uInt>(chunk.size());
      rc = inflate(&zs, Z_NO_FLUSH);
      if (rc != Z_OK && rc != Z_STREAM_END) {
        inflateEnd(&zs);
        throw Error(ErrorKind::Adapter, "inflate failed with code " + std::to_string(rc));
      }
      out.insert(out.end(), chunk.data(), chunk.data() + (chunk.size() - zs.avail_out));
      if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
        inflateEnd(&zs);
        throw Error(ErrorKind::Adapter, "truncated deflate stream");
      }
    }
    inflateEnd(&zs);
    return out;
  }
};

// .xz container around LZMA2 (LZ77 matching + adaptive binary range coding),
// preset 9e.
class LzmaAdapter final : public CompressorAdapter {
 public:
  std::string_view name() const override { return "lzma"; }
  std::size_t min_container_bytes() const override { return 24; }

  std::vector<std::uint8_t> compress(std::span<const std::uint8_t> in) const override {
    std::vector<std::uint8_t> out(lzma_stream_buffer_bound(in.size()));
    std::size_t pos = 0;
    const lzma_ret rc = lzma_easy_buffer_encode(9 | LZMA_PRESET_EXTREME, LZMA_CHECK_CRC32,
                                                nullptr, in.data(), in.size(), out.data(),
                                                &pos, out.size());
    if (rc != LZMA_OK) throw Error(ErrorKind::Adapter, "lzma encode failed with code " + std::to_string(rc));
    out.resize(pos);
    return out;
  }

  std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> in) const override {
    lzma_stream strm = LZMA_STREAM_INIT;
    if (lzma_stream_decoder(&strm, UINT64_MAX, 0) != LZMA_OK)
      throw Error(ErrorKind::Adapter, "lzma decoder init failed");
    std::vector<std::uint8_t> out;
    std::vector<std::uint8_t> chunk(1 << 16);
    strm.next_in = in.data();
    strm.avail_in = in.size();
    lzma_ret rc = LZMA_OK;
    while (rc != LZMA_STREAM_END) {
      strm.next_out = chunk.data();
      strm.avail_out = chunk.size();
      rc = lzma_code(&strm, LZMA_FINISH);
      if (rc != LZMA_OK && rc != LZMA_STREAM_END) {
        lzma_end(&strm);
        throw Error(ErrorKind::Adapter, "lzma decode failed with code " + std::to_string(rc));
      }
      out.insert(out.end(), chunk.data(), chunk.data() + (chunk.size() - strm.avail_out));
    }
    lzma_end(&strm);
    return out;
  }
};

inline std::vector<std::string> adapter_names() { return {"deflate", "lzma"}; }

inline std::unique_ptr<CompressorAdapter> make_adapter(std::string_view name) {
  if (name == "deflate") return std::make_unique<DeflateAdapter>();
  if (name == "lzma") return std::make_unique<LzmaAdapter>();
  std::string known;
  for (const auto& n : adapter_names()) known += (known.empty() ? "" : ", ") + n;
  throw Error(ErrorKind::Argument,
              "unknown compressor \"" + std::string(name) + "\" (available: " + known + ")");
}

// 8 * |compress(write_mcs(g))|
inline Index estimate_upper_bound(const SimpleMag& g, const CompressorAdapter& c) {
  return 8 * static_cast<Index>(c.compress(write_mcs(g)).size());
}

struct UpperBound {
  Index bits = 0;
  // "mcs" or "msc": which lossless description produced the bound.
  std::string route;
};

// Smallest compressed size over the lossless descriptions available for g:
// its .mcs always, and its .msc when g is snapshot-like (with all sequential
// couplings present in the implied-coupling variant).
inline UpperBound best_upper_bound(const SimpleMag& g, const CompressorAdapter& c) {
  UpperBound best{estimate_upper_bound(g, c), "mcs"};
  if (g.shape().order() != 2) return best;
  std::optional<SnapshotOptions> options;
  if (is_snapshot_like(g, false))
    options = SnapshotOptions{};
  else if (is_snapshot_like(g, true) && is_sequentially_coupled(g).coupled)
    options = SnapshotOptions{.implied_couplings = true};
  if (options) {
    const Index bits = 8 * static_cast<Index>(c.compress(write_msc(encode_snapshot(g, *options))).size());
    if (bits < best.bits) best = {bits, "msc"};
  }
  return best;
}

struct GapReport {
  Index vertices = 1;
  Index times = 1;
  // ((|V||T|)^2 - |V||T|) / 2
  Index total_positions = 0;
  // |T| (|V|^2 - |V|) / 2
  Index spatial_positions = 0;
  Index theoretical_gap_bits = 0;
  // .msc header and padding for this shape: the measured logarithmic term.
  Index snapshot_overhead_bits = 0;

  // Filled by compare_info.
  std::optional<std::string> compressor;
  std::optional<Index> compressed_general_bits;
  std::optional<Index> compressed_spatial_bits;
  std::optional<std::string> general_route;
  std::optional<std::string> spatial_route;

  // compressed_general_bits / compressed_spatial_bits in lowest terms.
  std::optional<std::pair<Index, Index>> ratio() const {
    if (!compressed_general_bits || !compressed_spatial_bits || *compressed_spatial_bits == 0)
      return std::nullopt;
    const Index g = std::gcd(*compressed_general_bits, *compressed_spatial_bits);
    return std::pair{*compressed_general_bits / g, *compressed_spatial_bits / g};
  }
};

inline GapReport compute_gap(Index vertices, Index times) {
  if (vertices == 0 || times == 0)
    throw Error(ErrorKind::Argument, "vertex and time counts must be positive");
  GapReport r;
  r.vertices = vertices;
  r.times = times;
  r.total_positions = possible_edge_count(CompanionTuple{vertices, times});
  r.spatial_positions = spatial_position_count(vertices, times);
  r.theoretical_gap_bits = r.total_positions - r.spatial_positions;
  r.snapshot_overhead_bits = msc_overhead_bits(vertices, times);
  return r;
}

inline GapReport compare_info(const SimpleMag& general, const SimpleMag& spatial,
                              const CompressorAdapter& c) {
  if (general.shape().order() != 2 || spatial.shape().order() != 2)
    throw Error(ErrorKind::Argument, "information comparison needs order-2 MAGs");
  if (!(general.shape() == spatial.shape()))
    throw Error(ErrorKind::Argument, "shape mismatch: " + general.shape().to_string() +
                                         " vs " + spatial.shape().to_string());
  if (!is_snapshot_like(spatial, true))
    throw Error(ErrorKind::NotSnapshot, "second MAG is not snapshot-like");
  GapReport r = compute_gap(general.shape()[0], general.shape()[1]);
  const auto g = best_upper_bound(general, c);
  const auto s = best_upper_bound(spatial, c);
  r.compressor = std::string(c.name());
  r.compressed_general_bits = g.bits;
  r.compressed_spatial_bits = s.bits;
  r.general_route = g.route;
  r.spatial_route = s.route;
  return r;
}

}  // namespace mag
