#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "silverlab/assignment.hpp"
#include "silverlab/rational.hpp"
#include "silverlab/sequence.hpp"

namespace silverlab {

/// Finite prefix-closed set of words over a bounded alphabet.
class FiniteTree {
 public:
  /// The prefix closure of `words` (always contains the empty word).
  static FiniteTree closure(Alphabet alphabet, const std::vector<Word>& words);
  /// All words of length <= height.
  static FiniteTree cube(Alphabet alphabet, std::uint64_t height);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::set<Word>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool contains(const Word& w) const { return nodes_.count(w) > 0; }

  std::vector<std::uint64_t> children(const Word& t) const;
  std::vector<Word> terminals() const;
  std::uint64_t height() const;
  /// Nodes with at least two immediate successors.
  std::vector<Word> splitting_nodes() const;
  /// {|t| + 1 : t splitting}.
  std::set<std::uint64_t> levels() const;
  /// Shortest splitting node extending t (t itself included); nullopt if none.
  std::optional<Word> spl_succ(const Word& t) const;
  /// All terminals share one length.
  bool is_uniform() const;

  /// One node per line, children indented two spaces under their parent.
  std::string to_text() const;

  friend bool operator==(const FiniteTree&, const FiniteTree&) = default;

 private:
  FiniteTree(Alphabet alphabet, std::set<Word> nodes)
      : alphabet_(alphabet), nodes_(std::move(nodes)) {}
  Alphabet alphabet_;
  std::set<Word> nodes_;
};

/// A tree every level of which is either fully splitting or fixed to one
/// value: the depth-truncation of a Silver tree. Kept symbolically since the
/// node count is exponential in the number of splitting levels.
class LevelTree {
 public:
  LevelTree(Alphabet alphabet, std::vector<std::optional<std::uint64_t>> levels);

  const Alphabet& alphabet() const { return alphabet_; }
  /// Entry d describes the edge from depth d to d + 1: a fixed value or split.
  const std::vector<std::optional<std::uint64_t>>& pattern() const { return pattern_; }
  std::uint64_t height() const { return pattern_.size(); }
  std::uint64_t split_count() const;
  std::set<std::uint64_t> levels() const;
  bool contains(const Word& w) const;
  bool is_terminal(const Word& w) const { return w.size() == height() && contains(w); }

  /// Terminal with the given digits at the splitting levels, in order.
  Word terminal(const Word& split_values) const;
  /// All terminals; throws CapExceeded past `cap`.
  std::vector<Word> terminals(std::uint64_t cap = 1u << 16) const;
  FiniteTree materialize(std::uint64_t cap = 1u << 16) const;

  /// Same tree extended below every terminal by `more`.
  LevelTree extended(const std::vector<std::optional<std::uint64_t>>& more) const;

 private:
  Alphabet alphabet_;
  std::vector<std::optional<std::uint64_t>> pattern_;
};

struct SplittingReport {
  std::vector<Word> split_nodes;  // empty for LevelTree reports
  std::set<std::uint64_t> levels;
  std::uint64_t height = 0;
  Rational ratio;  // |levels| / height; the one-node tree counts as a full cube, ratio 1
};

SplittingReport splitting_report(const FiniteTree& t);
SplittingReport splitting_report(const LevelTree& t);

/// Depth-truncation of the Silver tree of N_f: all words of length <= depth
/// that agree with f.
FiniteTree tree_of(const Cylinder& c, std::uint64_t depth, std::uint64_t node_cap = 1u << 20);
/// The same tree kept level-wise.
LevelTree level_tree_of(const Cylinder& c, std::uint64_t depth);

}  // namespace silverlab
