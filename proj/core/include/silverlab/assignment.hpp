#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "silverlab/descriptor.hpp"
#include "silverlab/error.hpp"
#include "silverlab/sequence.hpp"

namespace silverlab {

/// A partial function f: N -> K. Coordinates in `free` are undefined; every
/// other coordinate takes its value from `fixed` if listed there, otherwise
/// from `tail`.
class PartialAssignment {
 public:
  PartialAssignment(Alphabet alphabet, Coalition free, std::map<std::uint64_t, std::uint64_t> fixed,
                    EventuallyPeriodicSeq tail);

  /// Everything free.
  static PartialAssignment empty(Alphabet alphabet);
  /// Fixes exactly the listed coordinates; all others free.
  static PartialAssignment only(Alphabet alphabet, std::map<std::uint64_t, std::uint64_t> fixed);

  const Alphabet& alphabet() const { return alphabet_; }
  const Coalition& free() const { return free_; }
  const std::map<std::uint64_t, std::uint64_t>& fixed() const { return fixed_; }
  const EventuallyPeriodicSeq& tail() const { return tail_; }

  bool is_free(std::uint64_t n) const { return free_.contains(n); }
  /// f(n), or nullopt when n is free.
  std::optional<std::uint64_t> value(std::uint64_t n) const;

  /// Free set infinite. Computed once at construction.
  bool is_silver() const { return silver_; }

  /// Values of f below the least free coordinate.
  Word stem(std::uint64_t scan_cap = Coalition::kScanCap) const;

  /// The least `count` free coordinates a_0 < a_1 < ...
  std::vector<std::uint64_t> free_coordinates(std::size_t count) const {
    return free_.first_members(count);
  }

  /// f extended by `values` on (necessarily free) coordinates.
  PartialAssignment extend(const std::map<std::uint64_t, std::uint64_t>& values) const;

  /// The point agreeing with f on dom(f) and with `fill` (overridden by
  /// `overrides`) on free coordinates. Needs a geometric-atom-free free set.
  EventuallyPeriodicSeq complete(std::uint64_t fill,
                                 const std::map<std::uint64_t, std::uint64_t>& overrides = {}) const;

  std::string to_dsl() const;

  friend bool operator==(const PartialAssignment& a, const PartialAssignment& b);

 private:
  Alphabet alphabet_;
  Coalition free_;
  std::map<std::uint64_t, std::uint64_t> fixed_;
  EventuallyPeriodicSeq tail_;
  bool silver_ = false;
};

/// The basic set N_f.
class Cylinder {
 public:
  explicit Cylinder(PartialAssignment f) : f_(std::move(f)) {}
  const PartialAssignment& assignment() const { return f_; }
  const Alphabet& alphabet() const { return f_.alphabet(); }

 private:
  PartialAssignment f_;
};

struct MembershipResult {
  bool agrees;
  std::uint64_t at = 0;  // least disagreeing coordinate when !agrees

  friend bool operator==(const MembershipResult&, const MembershipResult&) = default;
};

/// Compares x with f on [0, depth).
template <Point X>
MembershipResult cylinder_member(const X& x, const Cylinder& c, std::uint64_t depth) {
  if (depth < 1) throw InvalidArgument("depth must be at least 1");
  if (!(Alphabet(x.alphabet()) == c.alphabet()))
    throw InvalidArgument("alphabet mismatch: point over " + Alphabet(x.alphabet()).to_string() +
                          ", cylinder over " + c.alphabet().to_string());
  for (std::uint64_t n = 0; n < depth; ++n) {
    const auto v = c.assignment().value(n);
    if (v && *v != x.at(n)) return {false, n};
  }
  return {true, 0};
}

/// The point agreeing with f on dom(f), with `overrides` where given and with
/// `fill` on the remaining free coordinates.
struct Completion {
  PartialAssignment f;
  std::uint64_t fill = 0;
  std::map<std::uint64_t, std::uint64_t> overrides;

  std::uint64_t at(std::uint64_t n) const {
    if (auto v = f.value(n)) return *v;
    auto it = overrides.find(n);
    return it == overrides.end() ? fill : it->second;
  }
  const Alphabet& alphabet() const { return f.alphabet(); }
  Word take(std::uint64_t n) const {
    Word w(n);
    for (std::uint64_t i = 0; i < n; ++i) w[i] = at(i);
    return w;
  }
  /// Available when the free set has no geometric atoms.
  EventuallyPeriodicSeq to_sequence() const { return f.complete(fill, overrides); }
};

/// A finite word read as a point; coordinates past its end read as 0.
/// Used to test witness prefixes against cylinders up to their length.
struct WordPoint {
  Word word;
  Alphabet alpha;
  std::uint64_t at(std::uint64_t n) const { return n < word.size() ? word[n] : 0; }
  Alphabet alphabet() const { return alpha; }
};

/// DSL text for an eventually periodic value rule: periodic("pre","per") when
/// every value is a single digit, values([..],[..]) otherwise.
std::string tail_dsl(const EventuallyPeriodicSeq& tail);

}  // namespace silverlab
