#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "silverlab/assignment.hpp"
#include "silverlab/descriptor.hpp"
#include "silverlab/rational.hpp"
#include "silverlab/sequence.hpp"

namespace silverlab {

/// A social choice function F: K^N -> K depending only on a finite support.
class ChoiceFunction {
 public:
  enum class Rule { Dictator, Parity, Majority, Table, Constant };

  static ChoiceFunction dictator(std::uint64_t voter, std::uint64_t k = 2);
  static ChoiceFunction parity(std::vector<std::uint64_t> support);
  /// Most frequent value on the support; `tie` whenever the maximum is shared.
  static ChoiceFunction majority(std::vector<std::uint64_t> support, std::uint64_t tie,
                                 std::uint64_t k = 2);
  /// `table` lists F on K^|S| in lexicographic order, first support
  /// coordinate most significant.
  static ChoiceFunction table(std::uint64_t k, std::vector<std::uint64_t> support, Word table);
  static ChoiceFunction constant(std::uint64_t value, std::uint64_t k = 2);

  Rule rule() const { return rule_; }
  std::uint64_t k() const { return k_; }
  const Alphabet& alphabet() const { return alphabet_; }
  /// Sorted, duplicate-free.
  const std::vector<std::uint64_t>& support() const { return support_; }
  std::uint64_t tie() const { return param_; }
  std::uint64_t constant_value() const { return param_; }
  const Word& entries() const { return table_; }

  /// F on the values x(s) for s in support(), in support order.
  std::uint64_t eval_on_support(const Word& values) const;

  template <Point X>
  std::uint64_t eval(const X& x) const {
    Word v;
    v.reserve(support_.size());
    for (auto s : support_) v.push_back(x.at(s));
    return eval_on_support(v);
  }

  std::string to_dsl() const;

  friend bool operator==(const ChoiceFunction&, const ChoiceFunction&) = default;

 private:
  ChoiceFunction(Rule rule, std::uint64_t k, std::vector<std::uint64_t> support);
  Rule rule_;
  std::uint64_t k_;
  Alphabet alphabet_;
  std::vector<std::uint64_t> support_;
  std::uint64_t param_ = 0;
  Word table_;
};

/// Finite union of basic clopen cylinders, each fixing finitely many
/// coordinates. An empty constraint map is the whole space.
struct OpenSetApprox {
  std::vector<std::map<std::uint64_t, std::uint64_t>> cylinders;
  std::uint64_t depth = 0;  // every constrained coordinate is below this

  static OpenSetApprox whole() { return {{{}}, 0}; }
  static OpenSetApprox of(std::vector<std::map<std::uint64_t, std::uint64_t>> cylinders);

  template <Point X>
  bool contains(const X& x) const {
    for (const auto& c : cylinders) {
      bool ok = true;
      for (const auto& [n, v] : c) ok = ok && x.at(n) == v;
      if (ok) return true;
    }
    return false;
  }
  std::string to_dsl() const;

  friend bool operator==(const OpenSetApprox&, const OpenSetApprox&) = default;
};

struct SearchOptions {
  /// Upper bound on the number of completions enumerated; 2^20 means at
  /// most 20 binary coordinates.
  std::uint64_t max_evaluations = std::uint64_t{1} << 20;
};

struct IrrelevanceResult {
  enum class Verdict { Irrelevant, Relevant, Vacuous };
  Verdict verdict;
  std::uint64_t value = 0;                                 // when Irrelevant
  std::optional<std::pair<Completion, Completion>> witness;  // when Relevant
  std::vector<std::uint64_t> pivots;  // coordinates that were enumerated
  std::uint64_t evaluations = 0;

  bool irrelevant() const { return verdict == Verdict::Irrelevant; }
};

/// Decides whether F is constant on N_f, where f has free set b. The first
/// completion in lexicographic order is the reference point; a relevant
/// verdict pairs it with the first completion taking a different value.
IrrelevanceResult is_irrelevant(const ChoiceFunction& F, const Coalition& b, const PartialAssignment& f,
                                const SearchOptions& opts = {});

/// Same decision restricted to N_f ∩ B; Vacuous if N_f ∩ B is empty.
IrrelevanceResult h_almost_irrelevant(const ChoiceFunction& F, const Coalition& b,
                                      const PartialAssignment& f, const OpenSetApprox& B,
                                      const SearchOptions& opts = {});

/// Families of "large" coalitions.
struct Family {
  enum class Kind { FinPlus, DensePlus, SingletonStar, FinStar };
  Kind kind;
  Rational delta;  // DensePlus only

  static Family fin_plus() { return {Kind::FinPlus, {}}; }
  static Family dense_plus(Rational delta) { return {Kind::DensePlus, delta}; }
  static Family singleton_star() { return {Kind::SingletonStar, {}}; }
  static Family fin_star() { return {Kind::FinStar, {}}; }

  /// Fin+: infinite. D_delta+: upper density >= delta (> 0 when delta = 0).
  /// Singleton*: complement has at most one element. Fin*: cofinite.
  bool admits(const Coalition& b) const;
  std::string to_dsl() const;
  std::string describe() const;

  friend bool operator==(const Family&, const Family&) = default;
};

struct AntiDemocracyResult {
  bool found = false;
  std::optional<Coalition> b;
  std::optional<PartialAssignment> f;
  std::uint64_t value = 0;
  std::string search;  // what was searched, for reports
};

/// Looks for b in `family` and f with free set b such that F is constant on
/// N_f. Tries the canonical witness b = N \ S first (when the family admits
/// it), then `candidates` in order.
AntiDemocracyResult is_anti_democratic(const ChoiceFunction& F, const Family& family,
                                       const std::vector<Coalition>& candidates = {},
                                       const SearchOptions& opts = {});

}  // namespace silverlab
