#pragma once

// JSON documents for analysis and information reports. nlohmann::json keeps
// object keys in a std::map, so every dump is key sorted and stable.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mag/core.hpp"
#include "mag/kproxy.hpp"
#include "mag/snapshot.hpp"
#include "mag/topo.hpp"

namespace mag {

struct TopoReport {
  CompanionTuple shape;
  Index edge_count = 0;
  std::vector<Index> degrees;
  double max_degree_deviation = 0.0;
  std::optional<Index> diameter;  // nullopt = disconnected
  std::optional<CommonNeighborRange> common_neighbors;
  std::vector<Index> interdimensional_census;  // aspects 2..p
  std::optional<ReachabilityVerdict> reachability;

  // Order-2 only.
  std::optional<SequentialCouplingVerdict> sequential;
  std::optional<bool> snapshot_like;
  std::optional<bool> snapshot_like_with_couplings;
  std::optional<CouplingVerdict> couplings;
};

// `aspect` selects the dimension for the non-sequential reachability check;
// it is skipped for order-1 MAGs.
inline TopoReport build_topo_report(const SimpleMag& g, std::size_t aspect = 2) {
  TopoReport r;
  r.shape = g.shape();
  r.edge_count = g.edge_count();
  const Adjacency adj(g);
  auto degrees = degree_profile(adj);
  r.degrees = std::move(degrees.degrees);
  r.max_degree_deviation = degrees.max_deviation;
  r.diameter = composite_diameter(adj);
  r.common_neighbors = common_neighbor_range(adj);
  r.interdimensional_census = interdimensional_census(g);
  if (g.shape().order() >= 2) r.reachability = verify_non_sequential_reachability(g, adj, aspect);
  if (g.shape().order() == 2) {
    r.sequential = is_sequentially_coupled(g);
    r.snapshot_like = is_snapshot_like(g, false);
    r.snapshot_like_with_couplings = is_snapshot_like(g, true);
    r.couplings = check_multiplex_couplings(g);
  }
  return r;
}

inline nlohmann::json vertex_json(const CompositeVertex& v) { return v.coords; }

inline nlohmann::json to_json(const TopoReport& r) {
  using nlohmann::json;
  json j;
  j["aspectSizes"] = std::vector<Index>(r.shape.sizes().begin(), r.shape.sizes().end());
  j["vertexCount"] = r.shape.vertex_count();
  j["edgeCount"] = r.edge_count;
  j["degrees"] = r.degrees;
  j["maxDegreeDeviation"] = r.max_degree_deviation;
  j["diameter"] = r.diameter ? json(*r.diameter) : json("disconnected");
  if (r.common_neighbors)
    j["commonNeighbors"] = {{"min", r.common_neighbors->min}, {"max", r.common_neighbors->max}};
  else
    j["commonNeighbors"] = nullptr;

  json census = json::array();
  for (std::size_t i = 0; i < r.interdimensional_census.size(); ++i)
    census.push_back({{"aspect", i + 2}, {"nonSequentialEdges", r.interdimensional_census[i]}});
  j["interdimensionalCensus"] = census;

  if (r.reachability) {
    json failing = json::array();
    for (std::size_t i = 0; i < r.reachability->failing.size() && i < 16; ++i)
      failing.push_back({vertex_json(vertex_from_index(r.shape, r.reachability->failing[i].first)),
                         vertex_json(vertex_from_index(r.shape, r.reachability->failing[i].second))});
    j["nonSequentialReachability"] = {{"aspect", r.reachability->aspect},
                                      {"holds", r.reachability->holds},
                                      {"qualifyingPairs", r.reachability->qualifying_pairs},
                                      {"failingPairs", r.reachability->failing.size()},
                                      {"failingExamples", failing}};
  } else {
    j["nonSequentialReachability"] = nullptr;
  }

  if (r.sequential) {
    j["sequentiallyCoupled"] = r.sequential->coupled;
    j["snapshotLike"] = *r.snapshot_like;
    j["snapshotLikeWithCouplings"] = *r.snapshot_like_with_couplings;
    j["multiplexCouplings"] = {{"diagonal", r.couplings->diagonal},
                               {"categorical", r.couplings->categorical},
                               {"potentiallyLayerConnected",
                                r.couplings->potentially_layer_connected}};
  } else {
    j["sequentiallyCoupled"] = nullptr;
    j["snapshotLike"] = nullptr;
    j["snapshotLikeWithCouplings"] = nullptr;
    j["multiplexCouplings"] = nullptr;
  }
  return j;
}

inline nlohmann::json to_json(const GapReport& r) {
  using nlohmann::json;
  json j;
  j["vertices"] = r.vertices;
  j["times"] = r.times;
  j["totalPositions"] = r.total_positions;
  j["spatialPositions"] = r.spatial_positions;
  j["theoreticalGapBits"] = r.theoretical_gap_bits;
  j["snapshotOverheadBits"] = r.snapshot_overhead_bits;
  if (r.spatial_positions != 0)
    j["theoreticalRatio"] =
        static_cast<double>(r.total_positions) / static_cast<double>(r.spatial_positions);
  else
    j["theoreticalRatio"] = nullptr;
  const auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  j["compressor"] = opt(r.compressor);
  j["compressedGeneralBits"] = opt(r.compressed_general_bits);
  j["compressedSpatialBits"] = opt(r.compressed_spatial_bits);
  j["generalRoute"] = opt(r.general_route);
  j["spatialRoute"] = opt(r.spatial_route);
  if (const auto ratio = r.ratio()) {
    j["ratio"] = static_cast<double>(ratio->first) / static_cast<double>(ratio->second);
    j["ratioFraction"] = std::to_string(ratio->first) + "/" + std::to_string(ratio->second);
  } else {
    j["ratio"] = nullptr;
    j["ratioFraction"] = nullptr;
  }
  return j;
}

}  // namespace mag
