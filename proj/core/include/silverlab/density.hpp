#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "silverlab/descriptor.hpp"
#include "silverlab/rational.hpp"

namespace silverlab {

/// alpha_n = |a ∩ [0, n]| / n. Note the closed interval: alpha_n of N is (n+1)/n.
Rational alpha(const Coalition& a, std::uint64_t n);

struct DensityProfile {
  std::vector<std::pair<std::uint64_t, Rational>> samples;
  /// Tail window the estimates are taken over, as indices into `samples`.
  std::size_t window_begin = 0;
  Rational upper;
  Rational lower;
  std::optional<Rational> exact;
};

/// Samples alpha at every horizon; upper/lower are max/min over the last half
/// of the horizons. `exact` is the structural density when it can be derived.
DensityProfile density_bounds(const Coalition& a, const std::vector<std::uint64_t>& horizons);

/// Every h with {h, h+1, h+2} ⊆ A and h + 2 <= horizon, increasing.
std::vector<std::uint64_t> find_triples(const Coalition& a, std::uint64_t horizon);

}  // namespace silverlab
