#pragma once

// Seeded uniform-random MAGs.
//
// Each edge position r is decided by its own pseudorandom word, so the result
// does not depend on generation order. The word is the SplitMix64 output for
// counter r + 1 of a stream whose start state is mix(seed):
//
//   key  = mix(seed)
//   word = mix(key + (r + 1) * 0x9E3779B97F4A7C15)
//   mix(z): z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//           z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//           return z ^ (z >> 31)
//
// Position r is present iff word * den < num * 2^64 (exact for every
// rational num/den in [0, 1]).

#include <cstdint>

#include "mag/core.hpp"
#include "mag/error.hpp"
#include "mag/snapshot.hpp"

namespace mag {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t position_word(std::uint64_t seed, Index rank) {
  return splitmix64_mix(splitmix64_mix(seed) + (rank + 1) * kGoldenGamma);
}

struct GenSpec {
  CompanionTuple shape;
  std::uint64_t numerator = 1;
  std::uint64_t denominator = 2;
  std::uint64_t seed = 0;
  bool spatial_only = false;

  void validate() const {
    if (denominator == 0 || numerator > denominator)
      throw Error(ErrorKind::Argument, "edge probability must be a fraction in [0, 1]");
    if (spatial_only && shape.order() != 2)
      throw Error(ErrorKind::ShapeMismatch,
                  "spatial generation needs an order-2 shape, got " + shape.to_string());
  }
};

namespace detail {

inline bool draw_present(std::uint64_t seed, Index rank, std::uint64_t num,
                         std::uint64_t den) {
  using u128 = unsigned __int128;
  return static_cast<u128>(position_word(seed, rank)) * den < static_cast<u128>(num) << 64;
}

}  // namespace detail

inline SimpleMag generate(const GenSpec& spec) {
  spec.validate();
  SimpleMag g(spec.shape);
  if (spec.numerator == 0) return g;
  if (!spec.spatial_only) {
    for (Index r = 0; r < g.position_count(); ++r)
      if (detail::draw_present(spec.seed, r, spec.numerator, spec.denominator)) g.set_rank(r);
    return g;
  }
  detail::for_each_spatial_run(spec.shape[0], spec.shape[1],
                               [&](Index start, Index /*block_pos*/, Index len) {
                                 for (Index r = start; r < start + len; ++r)
                                   if (detail::draw_present(spec.seed, r, spec.numerator,
                                                            spec.denominator))
                                     g.set_rank(r);
                               });
  return g;
}

}  // namespace mag
