#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "silverlab/sequence.hpp"

namespace silverlab {

/// An open dense set D ⊆ K^N given by a finite automaton. A word t is
/// "inside" when every infinite continuation of t passes through an accepting
/// state, i.e. N_t ⊆ D. Every state must be able to reach an accepting one,
/// which is exactly density.
class DenseOracle {
 public:
  using State = std::uint32_t;

  /// Accepting states are made absorbing. Throws InvalidArgument if some
  /// state cannot reach acceptance.
  DenseOracle(std::uint64_t k, std::vector<std::vector<State>> delta, std::vector<bool> accepting,
              std::string name);

  /// D = whole space: every word is inside.
  static DenseOracle identity(std::uint64_t k = 2);
  /// Words containing `w` as a factor.
  static DenseOracle contains(const Word& w, std::uint64_t k = 2);
  static DenseOracle ones(std::uint64_t count) { return contains(Word(count, 1)).renamed("ones(" + std::to_string(count) + ")"); }
  /// Intersection of finitely many oracles over the same alphabet.
  static DenseOracle all_of(const std::vector<DenseOracle>& parts);

  std::uint64_t k() const { return k_; }
  std::size_t state_count() const { return delta_.size(); }
  const std::string& name() const { return name_; }
  DenseOracle renamed(std::string name) const;

  State start() const { return 0; }
  State step(State q, std::uint64_t symbol) const { return delta_[q][symbol]; }
  State run(const Word& w, State from = 0) const;
  bool inside_state(State q) const { return forced_[q]; }

  /// N_s ⊆ D.
  bool inside(const Word& s) const { return forced_[run(s)]; }
  /// s itself when inside, otherwise s followed by the lexicographically
  /// least shortest word leading inside.
  Word extend(const Word& s) const;
  /// The suffix extend() appends from state q.
  Word suffix_from(State q) const;

  /// Optional replacement for extend(), used to model misbehaving oracles.
  /// Consumers must check the result.
  void set_rule(std::function<Word(const Word&)> rule) { rule_ = std::move(rule); }
  bool has_rule() const { return static_cast<bool>(rule_); }
  Word apply_rule(const Word& s) const { return rule_ ? rule_(s) : extend(s); }

 private:
  std::uint64_t k_;
  std::vector<std::vector<State>> delta_;
  std::vector<bool> forced_;
  std::vector<std::uint32_t> dist_;
  std::string name_;
  std::function<Word(const Word&)> rule_;
};

}  // namespace silverlab
