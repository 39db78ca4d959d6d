#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "silverlab/dense_oracle.hpp"
#include "silverlab/rational.hpp"
#include "silverlab/tree.hpp"

namespace silverlab {

/// What one round of the construction did and how T_n measures up.
struct DeltaRoundAudit {
  std::uint64_t round = 0;
  std::string oracle;
  Word thread;             // t_empty in round 0, the common extension r_J after
  std::uint64_t cube = 0;  // height of the grafted full cube
  std::uint64_t lev = 0;
  std::uint64_t ht = 0;
  Rational ratio;
  std::optional<Rational> bound;  // delta * (1 - 1/n); none in round 0
  bool members_ok = false;        // every terminal t has N_t inside D_n

  bool bound_ok() const { return !bound || ratio >= *bound; }
  bool ok() const { return members_ok && bound_ok(); }
};

struct DeltaTree {
  LevelTree tree;
  Rational delta;
  std::vector<DeltaRoundAudit> rounds;

  bool ok() const;
  /// round,lev,ht,ratio,bound
  std::string audit_csv() const;
};

struct DeltaTreeOptions {
  /// Sweep terminals one by one instead of one representative per automaton
  /// state. Oracles with a custom rule always use it.
  bool explicit_sweep = false;
  std::uint64_t terminal_cap = std::uint64_t{1} << 16;
  std::uint64_t height_cap = std::uint64_t{1} << 24;
};

/// Builds T_rounds from the decreasing sequence D_0, D_1, ...: round 0
/// takes t_empty inside D_0 followed by a full cube of the same width; round
/// n + 1 threads one common word r_J through every terminal into D_{n+1} and
/// grafts a full cube of height n * |t r_J|. Rounds past the last oracle
/// reuse it. Throws OracleViolation if an oracle returns a word that does not
/// extend its input or is not inside.
DeltaTree build_delta_tree(const std::vector<DenseOracle>& oracles, const Rational& delta,
                           std::uint64_t rounds, const DeltaTreeOptions& opts = {});

using LevelPattern = std::vector<std::optional<std::uint64_t>>;

/// One sweep: the word r such that every terminal followed by r is inside
/// D. The terminals are b w for b in `roots` (equal length, sorted) and w
/// matching `pattern`; they are visited in lexicographic order.
Word common_extension(const std::vector<Word>& roots, const LevelPattern& pattern, const DenseOracle& D,
                      const DeltaTreeOptions& opts = {});
Word common_extension(const LevelTree& tree, const DenseOracle& D, const DeltaTreeOptions& opts = {});

/// Every such terminal is inside D (exact, via the automaton).
bool terminals_inside(const std::vector<Word>& roots, const LevelPattern& pattern, const DenseOracle& D);
bool terminals_inside(const LevelTree& tree, const DenseOracle& D);

}  // namespace silverlab
