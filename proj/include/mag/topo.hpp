#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mag/core.hpp"
#include "mag/error.hpp"
#include "mag/snapshot.hpp"

namespace mag {

// Dense symmetric adjacency rows of the isomorphic classical graph, one bitset
// of N bits per composite vertex.
class Adjacency {
 public:
  explicit Adjacency(const SimpleMag& g)
      : n_(g.vertex_count()), words_per_row_((n_ + 63) / 64) {
    rows_.assign(static_cast<std::size_t>(n_ * words_per_row_), 0);
    const auto& x = g.characteristic_string();
    for (Index a = 0; a + 1 < n_; ++a) {
      const Index start = pair_row_start(n_, a);
      for (Index b = a + 1; b < n_; ++b) {
        if (x.test(start + (b - a - 1))) {
          set(a, b);
          set(b, a);
        }
      }
    }
  }

  Index size() const noexcept { return n_; }
  Index words_per_row() const noexcept { return words_per_row_; }

  std::span<const std::uint64_t> row(Index a) const {
    return {rows_.data() + a * words_per_row_, static_cast<std::size_t>(words_per_row_)};
  }

  bool adjacent(Index a, Index b) const { return (row(a)[b >> 6] >> (b & 63)) & 1u; }

  Index degree(Index a) const {
    Index d = 0;
    for (auto w : row(a)) d += std::popcount(w);
    return d;
  }

  Index common_neighbors(Index a, Index b) const {
    const auto ra = row(a);
    const auto rb = row(b);
    Index c = 0;
    for (std::size_t w = 0; w < ra.size(); ++w) c += std::popcount(ra[w] & rb[w]);
    return c;
  }

 private:
  void set(Index a, Index b) { rows_[a * words_per_row_ + (b >> 6)] |= std::uint64_t{1} << (b & 63); }

  Index n_;
  Index words_per_row_;
  std::vector<std::uint64_t> rows_;
};

// ---------------------------------------------------------------------------
// Degrees

struct DegreeProfile {
  std::vector<Index> degrees;
  // max over v of |d(v) - (N-1)/2|
  double max_deviation = 0.0;
};

inline DegreeProfile degree_profile(const Adjacency& adj) {
  DegreeProfile p;
  p.degrees.resize(static_cast<std::size_t>(adj.size()));
  const double center = (static_cast<double>(adj.size()) - 1.0) / 2.0;
  for (Index v = 0; v < adj.size(); ++v) {
    p.degrees[v] = adj.degree(v);
    p.max_deviation =
        std::max(p.max_deviation, std::abs(static_cast<double>(p.degrees[v]) - center));
  }
  return p;
}

inline DegreeProfile degree_profile(const SimpleMag& g) { return degree_profile(Adjacency(g)); }

// ---------------------------------------------------------------------------
// Composite diameter

// Longest shortest path over all pairs; nullopt when some pair is unreachable.
// A single composite vertex has diameter 0.
inline std::optional<Index> composite_diameter(const Adjacency& adj) {
  const Index n = adj.size();
  const Index w = adj.words_per_row();
  std::vector<std::uint64_t> visited(w), frontier(w), next(w);
  Index diameter = 0;
  for (Index s = 0; s < n; ++s) {
    std::fill(visited.begin(), visited.end(), 0);
    std::fill(frontier.begin(), frontier.end(), 0);
    visited[s >> 6] |= std::uint64_t{1} << (s & 63);
    frontier[s >> 6] |= std::uint64_t{1} << (s & 63);
    Index reached = 1;
    Index level = 0;
    while (true) {
      std::fill(next.begin(), next.end(), 0);
      for (Index fw = 0; fw < w; ++fw) {
        std::uint64_t word = frontier[fw];
        while (word) {
          const Index v = fw * 64 + std::countr_zero(word);
          word &= word - 1;
          const auto r = adj.row(v);
          for (Index k = 0; k < w; ++k) next[k] |= r[k];
        }
      }
      Index added = 0;
      for (Index k = 0; k < w; ++k) {
        next[k] &= ~visited[k];
        visited[k] |= next[k];
        added += std::popcount(next[k]);
      }
      if (added == 0) break;
      reached += added;
      ++level;
      frontier.swap(next);
    }
    if (reached != n) return std::nullopt;
    diameter = std::max(diameter, level);
  }
  return diameter;
}

inline std::optional<Index> composite_diameter(const SimpleMag& g) {
  return composite_diameter(Adjacency(g));
}

// ---------------------------------------------------------------------------
// Common neighbors (= vertex-disjoint paths of length 2)

inline Index common_neighbor_count(const SimpleMag& g, const CompositeVertex& u,
                                   const CompositeVertex& v) {
  const Index a = vertex_index(g.shape(), u);
  const Index b = vertex_index(g.shape(), v);
  if (a == b) throw Error(ErrorKind::Argument, "common neighbors need two distinct vertices");
  return Adjacency(g).common_neighbors(a, b);
}

struct CommonNeighborRange {
  Index min = 0;
  Index max = 0;
};

// Extremes of common_neighbors over all unordered pairs; nullopt when N < 2.
inline std::optional<CommonNeighborRange> common_neighbor_range(const Adjacency& adj) {
  if (adj.size() < 2) return std::nullopt;
  CommonNeighborRange range{adj.size(), 0};
  for (Index a = 0; a < adj.size(); ++a)
    for (Index b = a + 1; b < adj.size(); ++b) {
      const Index c = adj.common_neighbors(a, b);
      range.min = std::min(range.min, c);
      range.max = std::max(range.max, c);
    }
  return range;
}

// ---------------------------------------------------------------------------
// Sequential coupling and snapshot-likeness (order 2)

struct SequentialCouplingVerdict {
  bool coupled = true;
  // First violation found: a temporal edge skipping time instants, or a
  // missing coupling (u, t_i)-(u, t_{i+1}).
  std::optional<CompositeEdge> violation;
  bool violation_is_missing = false;
};

inline SequentialCouplingVerdict is_sequentially_coupled(const SimpleMag& g) {
  const auto& shape = g.shape();
  detail::require_order2(shape, "sequential coupling check");
  const Index nv = shape[0];
  const Index nt = shape[1];
  const Index n = g.vertex_count();
  SequentialCouplingVerdict verdict;
  g.characteristic_string().for_each_set([&](std::size_t r) {
    if (!verdict.coupled) return;
    const auto [a, b] = pair_from_rank(n, r);
    if (a % nv == b % nv && b / nv != a / nv + 1) {
      verdict.coupled = false;
      verdict.violation = edge_from_rank(shape, r);
    }
  });
  if (!verdict.coupled) return verdict;
  for (Index t = 0; t + 1 < nt; ++t)
    for (Index u = 0; u < nv; ++u)
      if (!g.has_pair(t * nv + u, (t + 1) * nv + u)) {
        verdict.coupled = false;
        verdict.violation_is_missing = true;
        verdict.violation = make_edge(shape, CompositeVertex{u, t}, CompositeVertex{u, t + 1});
        return verdict;
      }
  return verdict;
}

// True iff encode_snapshot without stripping would accept g.
inline bool is_snapshot_like(const SimpleMag& g, bool implied_couplings) {
  const auto& shape = g.shape();
  detail::require_order2(shape, "snapshot-like test");
  const Index nv = shape[0];
  const Index n = g.vertex_count();
  bool ok = true;
  g.characteristic_string().for_each_set([&](std::size_t r) {
    if (!ok) return;
    const auto [a, b] = pair_from_rank(n, r);
    if (detail::spatial_pair(nv, a, b)) return;
    if (implied_couplings && detail::sequential_coupling_pair(nv, a, b)) return;
    ok = false;
  });
  return ok;
}

// ---------------------------------------------------------------------------
// Non-sequential interdimensional edges

namespace detail {

inline std::size_t checked_aspect(const CompanionTuple& shape, std::size_t aspect) {
  if (aspect < 2 || aspect > shape.order())
    throw Error(ErrorKind::Argument, "aspect " + std::to_string(aspect) +
                                         " must lie in [2, " + std::to_string(shape.order()) +
                                         "] for shape " + shape.to_string());
  return aspect - 1;
}

inline Index coord_distance(Index x, Index y) { return x > y ? x - y : y - x; }

}  // namespace detail

// `aspect` is 1-based, 2 <= aspect <= p. True iff the endpoints' coordinates
// on that aspect differ by at least 2 (transtemporal when the aspect is time,
// crosslayer when it is a layer type).
inline bool is_non_sequential_interdimensional(const CompanionTuple& shape,
                                               const CompositeEdge& e, std::size_t aspect) {
  const std::size_t k = detail::checked_aspect(shape, aspect);
  vertex_index(shape, e.u);
  vertex_index(shape, e.v);
  return detail::coord_distance(e.u.coords[k], e.v.coords[k]) >= 2;
}

// Number of present non-sequential edges per aspect 2..p (entry 0 is aspect 2).
inline std::vector<Index> interdimensional_census(const SimpleMag& g) {
  const auto& shape = g.shape();
  std::vector<Index> census(shape.order() > 1 ? shape.order() - 1 : 0, 0);
  if (census.empty()) return census;
  const Index n = g.vertex_count();
  g.characteristic_string().for_each_set([&](std::size_t r) {
    auto [a, b] = pair_from_rank(n, r);
    for (std::size_t i = 0; i < shape.order(); ++i) {
      const Index ca = a % shape[i];
      const Index cb = b % shape[i];
      a /= shape[i];
      b /= shape[i];
      if (i > 0 && detail::coord_distance(ca, cb) >= 2) ++census[i - 1];
    }
  });
  return census;
}

struct ReachabilityVerdict {
  std::size_t aspect = 2;
  bool holds = true;
  // Pairs whose coordinates on the aspect differ by more than 2.
  Index qualifying_pairs = 0;
  // Qualifying pairs (vertex indices) with no path of length <= 2 that uses a
  // non-sequential edge on the aspect.
  std::vector<ClassicalEdge> failing;
};

inline ReachabilityVerdict verify_non_sequential_reachability(const SimpleMag& g,
                                                               const Adjacency& adj,
                                                               std::size_t aspect) {
  const auto& shape = g.shape();
  const std::size_t k = detail::checked_aspect(shape, aspect);
  const Index n = g.vertex_count();
  const Index w = adj.words_per_row();
  const Index nk = shape[k];

  std::vector<Index> coord(static_cast<std::size_t>(n));
  for (Index v = 0; v < n; ++v) coord[v] = aspect_coord(shape, v, k);

  // far[x] = vertices whose aspect coordinate is at distance >= 2 from x
  std::vector<std::uint64_t> far(static_cast<std::size_t>(nk * w), 0);
  for (Index x = 0; x < nk; ++x)
    for (Index v = 0; v < n; ++v)
      if (detail::coord_distance(coord[v], x) >= 2)
        far[x * w + (v >> 6)] |= std::uint64_t{1} << (v & 63);

  ReachabilityVerdict verdict;
  verdict.aspect = aspect;
  for (Index a = 0; a < n; ++a) {
    for (Index b = a + 1; b < n; ++b) {
      if (detail::coord_distance(coord[a], coord[b]) <= 2) continue;
      ++verdict.qualifying_pairs;
      // A direct edge between them is itself non-sequential.
      if (adj.adjacent(a, b)) continue;
      const auto ra = adj.row(a);
      const auto rb = adj.row(b);
      const std::uint64_t* fa = far.data() + coord[a] * w;
      const std::uint64_t* fb = far.data() + coord[b] * w;
      bool found = false;
      for (Index i = 0; i < w && !found; ++i) found = (ra[i] & rb[i] & (fa[i] | fb[i])) != 0;
      if (!found) verdict.failing.emplace_back(a, b);
    }
  }
  verdict.holds = verdict.failing.empty();
  return verdict;
}

inline ReachabilityVerdict verify_non_sequential_reachability(const SimpleMag& g,
                                                               std::size_t aspect) {
  return verify_non_sequential_reachability(g, Adjacency(g), aspect);
}

}  // namespace mag
