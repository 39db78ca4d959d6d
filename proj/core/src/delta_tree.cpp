#include "silverlab/delta_tree.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "silverlab/error.hpp"

namespace silverlab {

namespace {

using State = DenseOracle::State;
constexpr std::uint64_t kNoRank = std::numeric_limits<std::uint64_t>::max();

/// For every automaton state reached by some terminal, the rank of the
/// lexicographically least terminal reaching it among all such terminals.
std::vector<std::uint64_t> terminal_ranks(const std::vector<Word>& roots, const LevelPattern& pattern,
                                          const DenseOracle& D) {
  const std::uint64_t k = D.k();
  std::vector<std::uint64_t> rank(D.state_count(), kNoRank);
  for (std::uint64_t i = 0; i < roots.size(); ++i) {
    const State q = D.run(roots[i]);
    rank[q] = std::min(rank[q], i);
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> key(D.state_count());
  for (const auto& level : pattern) {
    constexpr std::pair<std::uint64_t, std::uint64_t> kNone{kNoRank, kNoRank};
    std::fill(key.begin(), key.end(), kNone);
    for (State q = 0; q < rank.size(); ++q) {
      if (rank[q] == kNoRank) continue;
      for (std::uint64_t a = level ? *level : 0; a < (level ? *level + 1 : k); ++a) {
        const State r = D.step(q, a);
        key[r] = std::min(key[r], std::pair{rank[q], a});
      }
    }
    std::vector<State> live;
    for (State r = 0; r < key.size(); ++r)
      if (key[r] != kNone) live.push_back(r);
    std::sort(live.begin(), live.end(), [&](State a, State b) { return key[a] < key[b]; });
    std::fill(rank.begin(), rank.end(), kNoRank);
    for (std::uint64_t i = 0; i < live.size(); ++i) rank[live[i]] = i;
  }
  return rank;
}

void check_extension(const DenseOracle& D, const Word& s, const Word& e) {
  if (!is_prefix(s, e))
    throw OracleViolation("oracle " + D.name() + " returned " + to_string(e) + ", which does not extend " +
                          to_string(s));
  if (!D.inside(e))
    throw OracleViolation("oracle " + D.name() + " returned " + to_string(e) + " for " + to_string(s) +
                          ", which is not inside");
}

Word sweep_explicit(const std::vector<Word>& roots, const LevelPattern& pattern, const DenseOracle& D,
                    std::uint64_t cap) {
  const LevelTree below(Alphabet::bounded(D.k()), pattern);
  const auto tails = below.terminals(cap);
  if (!roots.empty() && tails.size() > cap / roots.size()) throw CapExceeded("too many terminals for an explicit sweep");
  std::vector<Word> terms;
  for (const auto& b : roots)
    for (const auto& w : tails) {
      Word t = b;
      t.insert(t.end(), w.begin(), w.end());
      terms.push_back(std::move(t));
    }
  Word r;
  for (const auto& t : terms) {
    Word s = t;
    s.insert(s.end(), r.begin(), r.end());
    const Word e = D.apply_rule(s);
    check_extension(D, s, e);
    r.assign(e.begin() + static_cast<std::ptrdiff_t>(t.size()), e.end());
  }
  return r;
}

Word sweep_by_state(const std::vector<Word>& roots, const LevelPattern& pattern, const DenseOracle& D) {
  const auto rank = terminal_ranks(roots, pattern, D);
  std::vector<State> reps;
  for (State q = 0; q < rank.size(); ++q)
    if (rank[q] != kNoRank) reps.push_back(q);
  std::sort(reps.begin(), reps.end(), [&](State a, State b) { return rank[a] < rank[b]; });
  Word r;
  for (auto q : reps) {
    const Word more = D.suffix_from(D.run(r, q));
    r.insert(r.end(), more.begin(), more.end());
  }
  return r;
}

}  // namespace

Word common_extension(const std::vector<Word>& roots, const LevelPattern& pattern, const DenseOracle& D,
                      const DeltaTreeOptions& opts) {
  if (!std::is_sorted(roots.begin(), roots.end())) throw InvalidArgument("sweep roots must be sorted");
  for (const auto& v : pattern)
    if (v && *v >= D.k()) throw InvalidArgument("tree and oracle " + D.name() + " use different alphabets");
  if (opts.explicit_sweep || D.has_rule()) return sweep_explicit(roots, pattern, D, opts.terminal_cap);
  return sweep_by_state(roots, pattern, D);
}

Word common_extension(const LevelTree& tree, const DenseOracle& D, const DeltaTreeOptions& opts) {
  if (!tree.alphabet().is_bounded() || tree.alphabet().size() != D.k())
    throw InvalidArgument("tree and oracle " + D.name() + " use different alphabets");
  return common_extension({Word{}}, tree.pattern(), D, opts);
}

bool terminals_inside(const std::vector<Word>& roots, const LevelPattern& pattern, const DenseOracle& D) {
  const auto rank = terminal_ranks(roots, pattern, D);
  for (State q = 0; q < rank.size(); ++q)
    if (rank[q] != kNoRank && !D.inside_state(q)) return false;
  return true;
}

bool terminals_inside(const LevelTree& tree, const DenseOracle& D) {
  return terminals_inside({Word{}}, tree.pattern(), D);
}

bool DeltaTree::ok() const {
  return std::all_of(rounds.begin(), rounds.end(), [](const auto& a) { return a.ok(); });
}

std::string DeltaTree::audit_csv() const {
  std::string out = "round,lev,ht,ratio,bound\n";
  for (const auto& a : rounds) {
    out += std::to_string(a.round) + "," + std::to_string(a.lev) + "," + std::to_string(a.ht) + "," +
           to_string(a.ratio) + "," + (a.bound ? to_string(*a.bound) : std::string("-")) + "\n";
  }
  return out;
}

DeltaTree build_delta_tree(const std::vector<DenseOracle>& oracles, const Rational& delta, std::uint64_t rounds,
                           const DeltaTreeOptions& opts) {
  if (oracles.empty()) throw InvalidArgument("build_delta_tree needs at least one oracle");
  if (delta < Rational(0) || delta > Rational(1)) throw InvalidArgument("delta must lie in [0,1]");
  if (rounds < 1) throw InvalidArgument("rounds must be at least 1");
  const std::uint64_t k = oracles.front().k();
  for (const auto& D : oracles)
    if (D.k() != k) throw InvalidArgument("oracles use different alphabets");
  const Alphabet alph = Alphabet::bounded(k);
  auto oracle = [&](std::uint64_t n) -> const DenseOracle& { return oracles[std::min<std::uint64_t>(n, oracles.size() - 1)]; };

  auto audit = [&](std::uint64_t n, const LevelTree& t, Word thread, std::uint64_t cube) {
    DeltaRoundAudit a;
    a.round = n;
    a.oracle = oracle(n).name();
    a.thread = std::move(thread);
    a.cube = cube;
    const auto rep = splitting_report(t);
    a.lev = rep.levels.size();
    a.ht = rep.height;
    a.ratio = rep.ratio;
    if (n >= 1) a.bound = delta * (Rational(1) - Rational(1, static_cast<std::int64_t>(n)));
    a.members_ok = terminals_inside(t, oracle(n));
    return a;
  };

  const DenseOracle& D0 = oracle(0);
  const Word t0 = D0.apply_rule({});
  check_extension(D0, {}, t0);
  std::vector<std::optional<std::uint64_t>> pattern(t0.begin(), t0.end());
  pattern.resize(2 * t0.size());
  LevelTree tree(alph, pattern);
  DeltaTree out{tree, delta, {}};
  out.rounds.push_back(audit(0, tree, t0, t0.size()));

  for (std::uint64_t n = 0; n + 1 <= rounds; ++n) {
    const DenseOracle& D = oracle(n + 1);
    const Word r = common_extension(tree, D, opts);
    const std::uint64_t len = tree.height() + r.size();
    if (n != 0 && len > opts.height_cap / n) throw CapExceeded("delta tree height exceeds cap");
    const std::uint64_t h = n * len;
    std::vector<std::optional<std::uint64_t>> more(r.begin(), r.end());
    more.resize(r.size() + h);
    tree = tree.extended(more);
    out.rounds.push_back(audit(n + 1, tree, r, h));
  }
  out.tree = tree;
  return out;
}

}  // namespace silverlab
