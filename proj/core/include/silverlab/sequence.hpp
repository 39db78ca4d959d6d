#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace silverlab {

/// Finite word over an alphabet of naturals.
using Word = std::vector<std::uint64_t>;

std::string to_string(const Word& w);

/// True iff `prefix` is an initial segment of `w`.
bool is_prefix(const Word& prefix, const Word& w);

/// Either the bounded alphabet {0, ..., size-1} (size >= 2) or all of N.
class Alphabet {
 public:
  static Alphabet bounded(std::uint64_t size);
  static Alphabet naturals() { return Alphabet{}; }

  bool is_bounded() const { return size_.has_value(); }
  /// Throws InvalidArgument for the unbounded alphabet.
  std::uint64_t size() const;
  bool admits(std::uint64_t value) const { return !size_ || value < *size_; }

  std::string to_string() const;  // "2", "4", "inf"

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  Alphabet() = default;
  std::optional<std::uint64_t> size_;
};

/// Anything that can be read coordinate-by-coordinate as a point of K^N.
template <class X>
concept Point = requires(const X& x, std::uint64_t n) {
  { x.at(n) } -> std::convertible_to<std::uint64_t>;
  { x.alphabet() } -> std::convertible_to<Alphabet>;
};

/// x(n) = prefix[n] for n < |prefix|, period[(n - |prefix|) mod |period|] afterwards.
class EventuallyPeriodicSeq {
 public:
  EventuallyPeriodicSeq(Alphabet alphabet, Word prefix, Word period);

  static EventuallyPeriodicSeq constant(Alphabet alphabet, std::uint64_t value);
  /// Binary sequence from '0'/'1' strings.
  static EventuallyPeriodicSeq bits(const std::string& prefix, const std::string& period);

  std::uint64_t at(std::uint64_t n) const;
  const Alphabet& alphabet() const { return alphabet_; }
  const Word& prefix() const { return prefix_; }
  const Word& period() const { return period_; }

  /// x restricted to [0, n).
  Word take(std::uint64_t n) const;

  /// Shortest period, then shortest prefix. Two sequences are equal iff their
  /// canonical forms coincide.
  EventuallyPeriodicSeq canonical() const;

  /// Copy with coordinate `n` overwritten.
  EventuallyPeriodicSeq with_value(std::uint64_t n, std::uint64_t value) const;

  /// Length of the comparison window shared with `other`: beyond it, both
  /// sequences are jointly periodic with period lcm(|period|, |other.period|).
  /// Throws InvalidArgument if the lcm exceeds `max_period`.
  std::uint64_t joint_window(const EventuallyPeriodicSeq& other,
                             std::uint64_t max_period = kMaxJointPeriod) const;

  /// Pointwise combination, result over `alphabet`.
  template <class F>
  static EventuallyPeriodicSeq zip(const EventuallyPeriodicSeq& a, const EventuallyPeriodicSeq& b,
                                   Alphabet alphabet, F&& f);

  friend bool operator==(const EventuallyPeriodicSeq& a, const EventuallyPeriodicSeq& b);

  static constexpr std::uint64_t kMaxJointPeriod = std::uint64_t{1} << 22;

 private:
  Alphabet alphabet_;
  Word prefix_;
  Word period_;
};

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b, std::uint64_t cap);

template <class F>
EventuallyPeriodicSeq EventuallyPeriodicSeq::zip(const EventuallyPeriodicSeq& a,
                                                 const EventuallyPeriodicSeq& b, Alphabet alphabet,
                                                 F&& f) {
  const std::uint64_t start = std::max(a.prefix_.size(), b.prefix_.size());
  const std::uint64_t period = checked_lcm(a.period_.size(), b.period_.size(), kMaxJointPeriod);
  Word prefix(start);
  for (std::uint64_t n = 0; n < start; ++n) prefix[n] = f(a.at(n), b.at(n));
  Word cycle(period);
  for (std::uint64_t n = 0; n < period; ++n) cycle[n] = f(a.at(start + n), b.at(start + n));
  return EventuallyPeriodicSeq(alphabet, std::move(prefix), std::move(cycle)).canonical();
}

}  // namespace silverlab
