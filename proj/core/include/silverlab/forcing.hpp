#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "silverlab/assignment.hpp"
#include "silverlab/delta_tree.hpp"
#include "silverlab/dense_oracle.hpp"
#include "silverlab/rational.hpp"
#include "silverlab/tree.hpp"

namespace silverlab {

/// A condition of the finite-tree poset: a finite tree all of whose
/// terminals have one length. Kept as an explicit uniform base followed by a
/// level pattern shared by every terminal of the base.
class UniformTree {
 public:
  /// Throws InvalidArgument unless `base` is uniform.
  explicit UniformTree(FiniteTree base, LevelPattern below = {});
  static UniformTree root(std::uint64_t k = 2);
  static UniformTree cube(std::uint64_t height, std::uint64_t k = 2);

  const Alphabet& alphabet() const { return base_.alphabet(); }
  const FiniteTree& base() const { return base_; }
  const LevelPattern& below() const { return below_; }
  std::uint64_t height() const { return base_.height() + below_.size(); }

  /// Depths d such that some node of length d has two or more children.
  std::vector<std::uint64_t> splitting_depths() const;
  bool contains(const Word& w) const;
  std::vector<Word> terminals(std::uint64_t cap = 1u << 16) const;
  FiniteTree materialize(std::uint64_t cap = 1u << 16) const;
  UniformTree extended(const LevelPattern& more) const;

  /// End-extension: this ⊇ p and every node outside p extends a terminal of
  /// p. Decided structurally when the bases agree, otherwise by
  /// materializing both trees.
  bool refines(const UniformTree& p, std::uint64_t cap = 1u << 16) const;

  /// Same set of nodes.
  friend bool operator==(const UniformTree& a, const UniformTree& b);

 private:
  FiniteTree base_;
  LevelPattern below_;
  std::vector<Word> base_terminals_;
};

/// Threads one common word through every terminal of p so that each lands
/// inside D. The result refines p; checked before returning.
UniformTree meet_dense(const UniformTree& p, const DenseOracle& D, const DeltaTreeOptions& opts = {});

/// The spine of a binary Silver tree with free coordinates a_0 < a_1 < ...:
/// the splitting node of length a_m is sent to its values at a_0..a_{m-1}.
class SpineMap {
 public:
  explicit SpineMap(PartialAssignment f);

  const PartialAssignment& source() const { return f_; }
  /// a_i, the i-th free coordinate.
  std::uint64_t free_coordinate(std::uint64_t i) const;

  /// φ̄ on a splitting node (a word of length a_m agreeing with f).
  Word phi_bar(const Word& splitting_node) const;
  /// The splitting node with spine word u.
  Word node_of(const Word& u) const;
  /// φ on the first `count` spine digits of a branch.
  template <Point X>
  Word phi(const X& x, std::uint64_t count) const {
    Word out;
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(x.at(free_coordinate(i)));
    return out;
  }

  /// The preimage of q: prefixes of node_of(u) for terminals u of q.
  FiniteTree preimage(const UniformTree& q, std::uint64_t cap = 1u << 16) const;
  /// |Lev| / ht of the preimage of q, computed without materializing it.
  SplittingReport preimage_report(const UniformTree& q) const;

 private:
  PartialAssignment f_;
  mutable std::vector<std::uint64_t> free_;
};

struct DensifyResult {
  UniformTree tree;
  Rational bound;  // delta * (1 - 2^-k)
  Rational ratio;  // of the preimage of `tree`
  std::uint64_t added = 0;
};

/// Extends p by the fewest splitting levels making the preimage ratio at
/// least delta * (1 - 2^-k). Requires the spine's free set to have density
/// at least delta.
DensifyResult densify(const UniformTree& p, const Rational& delta, std::uint64_t k, const SpineMap& spine,
                      std::uint64_t max_levels = std::uint64_t{1} << 20);

}  // namespace silverlab
