#pragma once

// Brute-force reference implementations, written independently of the
// library's search code.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "silverlab/choice.hpp"

namespace silverlab::testing {

/// Enumerates every assignment of the whole support, keeps those consistent
/// with f, and reports the constant value of F on them (nullopt if F takes
/// two values).
inline std::optional<std::uint64_t> naive_constant_value(const ChoiceFunction& F, const PartialAssignment& f) {
  const auto& S = F.support();
  const std::uint64_t k = F.k();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < S.size(); ++i) total *= k;
  std::optional<std::uint64_t> seen;
  for (std::uint64_t code = 0; code < total; ++code) {
    Word values(S.size());
    std::uint64_t c = code;
    bool consistent = true;
    for (std::size_t i = 0; i < S.size(); ++i) {
      values[i] = c % k;
      c /= k;
      if (auto fixed = f.value(S[i]); fixed && *fixed != values[i]) consistent = false;
    }
    if (!consistent) continue;
    const auto v = F.eval_on_support(values);
    if (seen && *seen != v) return std::nullopt;
    seen = v;
  }
  return seen;
}

}  // namespace silverlab::testing
