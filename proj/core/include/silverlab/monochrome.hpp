#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "silverlab/assignment.hpp"
#include "silverlab/choice.hpp"

namespace silverlab {

/// One halving stage: the current block was split into `part` and the rest,
/// and F was pushed into `kept` by fixing `fixed`.
struct MonochromeStage {
  std::set<std::uint64_t> block;
  std::set<std::uint64_t> part;
  std::set<std::uint64_t> kept;
  std::map<std::uint64_t, std::uint64_t> fixed;
  std::uint64_t evaluations = 0;
};

struct MonochromeResult {
  PartialAssignment sub;
  std::uint64_t value = 0;
  std::vector<MonochromeStage> stages;
};

/// Recursive halving of the value set. Stage i splits the current block by
/// `partitions[i]` (a subset of it; the lower half of the block once the list
/// runs out) and finds the least j and the lexicographically least values on
/// the first j free support coordinates forcing F into one side. Stops when
/// the block is a single value, so F is constant on the result.
MonochromeResult monochromatize(const ChoiceFunction& F, const Cylinder& c,
                                const std::vector<std::set<std::uint64_t>>& partitions = {},
                                const SearchOptions& opts = {});

}  // namespace silverlab
