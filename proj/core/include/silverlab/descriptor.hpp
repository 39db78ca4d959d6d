#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "silverlab/rational.hpp"
#include "silverlab/sequence.hpp"

namespace silverlab {

/// Symbolic subset of N: finite sets, arithmetic progressions, geometric
/// families {c*r^n}, eventually periodic characteristic words, and Boolean
/// combinations of those. Immutable; copies share structure.
class Coalition {
 public:
  enum class Kind { Finite, Arith, Geom, Periodic, Complement, Union, Intersection };

  static Coalition finite(std::set<std::uint64_t> members);
  static Coalition arith(std::uint64_t start, std::uint64_t step);
  /// {c * r^n : n >= 0}; requires c >= 1, 2 <= r, and c, r <= 2^40.
  static Coalition geom(std::uint64_t c, std::uint64_t r);
  /// Characteristic word `prefix` followed by `period` repeated; letters 0/1.
  static Coalition periodic(Word prefix, Word period);
  static Coalition periodic(const std::string& prefix, const std::string& period);
  static Coalition all() { return ~finite({}); }
  static Coalition none() { return finite({}); }

  Coalition operator~() const;
  friend Coalition operator|(const Coalition& a, const Coalition& b);
  friend Coalition operator&(const Coalition& a, const Coalition& b);
  Coalition minus(const Coalition& other) const { return *this & ~other; }

  Kind kind() const;
  const std::set<std::uint64_t>& elements() const;  // Finite
  std::uint64_t first() const;                       // Arith start / Geom c
  std::uint64_t second() const;                      // Arith step / Geom r
  const Word& prefix() const;                        // Periodic
  const Word& period() const;                        // Periodic
  const Coalition& lhs() const;                      // Complement operand, binary left
  const Coalition& rhs() const;                      // binary right

  bool contains(std::uint64_t n) const;

  bool is_finite() const;
  bool is_cofinite() const { return (~*this).is_finite(); }
  bool is_infinite() const { return !is_finite(); }
  bool has_geom() const;

  /// The characteristic word with every geometric atom read as empty. It
  /// differs from the set itself only on a density-zero set.
  EventuallyPeriodicSeq base() const;

  /// Natural density. Always exists for this class of sets.
  Rational density() const;

  /// |A ∩ [0, n]|, computed structurally.
  std::uint64_t count_upto(std::uint64_t n) const;

  /// Least member >= from, scanning at most `scan_cap` candidates.
  std::optional<std::uint64_t> next_member(std::uint64_t from,
                                           std::uint64_t scan_cap = kScanCap) const;
  /// Members of [0, n) in increasing order.
  std::vector<std::uint64_t> members_below(std::uint64_t n) const;
  /// First `count` members; throws CapExceeded if the scan cap is hit.
  std::vector<std::uint64_t> first_members(std::size_t count,
                                           std::uint64_t scan_cap = kScanCap) const;

  /// Canonical structural form. Geometric-atom-free sets collapse to one of
  /// finite{..}, ~finite{..}, arith(..), periodic(..). Idempotent.
  Coalition normalize() const;

  /// DSL text; parses back to a structurally equal descriptor.
  std::string to_dsl() const;

  /// Structural equality (not set equality).
  friend bool operator==(const Coalition& a, const Coalition& b);

  static constexpr std::uint64_t kScanCap = std::uint64_t{1} << 24;

 private:
  struct Node;
  explicit Coalition(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Formats a set of naturals, collapsing runs of three or more into a..b.
std::string format_set(const std::set<std::uint64_t>& s);

}  // namespace silverlab
