#include "silverlab/forcing.hpp"

#include <algorithm>
#include <set>

#include "silverlab/error.hpp"

namespace silverlab {

UniformTree::UniformTree(FiniteTree base, LevelPattern below) : base_(std::move(base)), below_(std::move(below)) {
  if (!base_.is_uniform()) throw InvalidArgument("condition tree has terminals of different lengths");
  for (const auto& v : below_)
    if (v && !alphabet().admits(*v)) throw InvalidArgument("level value outside alphabet");
  base_terminals_ = base_.terminals();
}

UniformTree UniformTree::root(std::uint64_t k) { return UniformTree(FiniteTree::cube(Alphabet::bounded(k), 0)); }

UniformTree UniformTree::cube(std::uint64_t height, std::uint64_t k) {
  return UniformTree(FiniteTree::cube(Alphabet::bounded(k), 0), LevelPattern(height));
}

std::vector<std::uint64_t> UniformTree::splitting_depths() const {
  std::set<std::uint64_t> out;
  for (const auto& w : base_.splitting_nodes()) out.insert(w.size());
  const std::uint64_t h0 = base_.height();
  for (std::uint64_t d = 0; d < below_.size(); ++d)
    if (!below_[d]) out.insert(h0 + d);
  return {out.begin(), out.end()};
}

bool UniformTree::contains(const Word& w) const {
  const std::uint64_t h0 = base_.height();
  if (w.size() <= h0) return base_.contains(w);
  if (!base_.contains(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(h0)))) return false;
  return LevelTree(alphabet(), below_).contains(Word(w.begin() + static_cast<std::ptrdiff_t>(h0), w.end()));
}

std::vector<Word> UniformTree::terminals(std::uint64_t cap) const {
  const auto tails = LevelTree(alphabet(), below_).terminals(cap);
  if (tails.size() > cap / base_terminals_.size()) throw CapExceeded("condition has too many terminals");
  std::vector<Word> out;
  for (const auto& b : base_terminals_)
    for (const auto& w : tails) {
      Word t = b;
      t.insert(t.end(), w.begin(), w.end());
      out.push_back(std::move(t));
    }
  return out;
}

FiniteTree UniformTree::materialize(std::uint64_t cap) const { return FiniteTree::closure(alphabet(), terminals(cap)); }

UniformTree UniformTree::extended(const LevelPattern& more) const {
  auto below = below_;
  below.insert(below.end(), more.begin(), more.end());
  return UniformTree(base_, std::move(below));
}

bool UniformTree::refines(const UniformTree& p, std::uint64_t cap) const {
  if (base_ == p.base_ && below_.size() >= p.below_.size() &&
      std::equal(p.below_.begin(), p.below_.end(), below_.begin()))
    return true;
  const auto mine = materialize(cap);
  const auto theirs = p.materialize(cap);
  const auto pterms = theirs.terminals();
  for (const auto& w : theirs.nodes())
    if (!mine.contains(w)) return false;
  for (const auto& w : mine.nodes()) {
    if (theirs.contains(w)) continue;
    if (std::none_of(pterms.begin(), pterms.end(), [&](const Word& s) { return is_prefix(s, w); })) return false;
  }
  return true;
}

bool operator==(const UniformTree& a, const UniformTree& b) {
  if (a.base_ == b.base_) return a.below_ == b.below_;
  return a.materialize() == b.materialize();
}

UniformTree meet_dense(const UniformTree& p, const DenseOracle& D, const DeltaTreeOptions& opts) {
  if (!p.alphabet().is_bounded() || p.alphabet().size() != D.k())
    throw InvalidArgument("condition and oracle " + D.name() + " use different alphabets");
  std::vector<Word> roots = p.base().terminals();
  const Word r = common_extension(roots, p.below(), D, opts);
  UniformTree q = p.extended(LevelPattern(r.begin(), r.end()));
  if (!terminals_inside(roots, q.below(), D))
    throw VerificationFailure("meet_dense left a terminal outside " + D.name());
  if (!q.refines(p)) throw VerificationFailure("meet_dense result does not refine its input");
  return q;
}

SpineMap::SpineMap(PartialAssignment f) : f_(std::move(f)) {
  if (!f_.alphabet().is_bounded() || f_.alphabet().size() != 2)
    throw InvalidArgument("spine map needs a binary Silver condition");
  if (!f_.is_silver()) throw InvalidArgument("spine map needs infinitely many free coordinates");
}

std::uint64_t SpineMap::free_coordinate(std::uint64_t i) const {
  while (free_.size() <= i) {
    const std::uint64_t from = free_.empty() ? 0 : free_.back() + 1;
    const auto next = f_.free().next_member(from);
    if (!next) throw CapExceeded("no free coordinate found from " + std::to_string(from));
    free_.push_back(*next);
  }
  return free_[i];
}

Word SpineMap::phi_bar(const Word& node) const {
  Word out;
  for (std::uint64_t n = 0; n < node.size(); ++n) {
    if (n == free_coordinate(out.size())) {
      if (node[n] > 1) throw InvalidArgument("spine node " + to_string(node) + " is not binary");
      out.push_back(node[n]);
    } else if (f_.value(n) != node[n]) {
      throw InvalidArgument(to_string(node) + " is not a node of the spine's tree");
    }
  }
  if (free_coordinate(out.size()) != node.size())
    throw InvalidArgument(to_string(node) + " is not a splitting node");
  return out;
}

Word SpineMap::node_of(const Word& u) const {
  const std::uint64_t len = free_coordinate(u.size());
  Word out;
  std::size_t i = 0;
  for (std::uint64_t n = 0; n < len; ++n) {
    if (i < u.size() && n == free_coordinate(i)) {
      out.push_back(u[i++]);
    } else {
      out.push_back(*f_.value(n));
    }
  }
  return out;
}

FiniteTree SpineMap::preimage(const UniformTree& q, std::uint64_t cap) const {
  std::vector<Word> nodes;
  for (const auto& u : q.terminals(cap)) nodes.push_back(node_of(u));
  return FiniteTree::closure(f_.alphabet(), nodes);
}

SplittingReport SpineMap::preimage_report(const UniformTree& q) const {
  SplittingReport r;
  for (auto d : q.splitting_depths()) r.levels.insert(free_coordinate(d) + 1);
  r.height = free_coordinate(q.height());
  r.ratio = r.height == 0 ? Rational(1)
                          : Rational(static_cast<std::int64_t>(r.levels.size()), static_cast<std::int64_t>(r.height));
  return r;
}

DensifyResult densify(const UniformTree& p, const Rational& delta, std::uint64_t k, const SpineMap& spine,
                      std::uint64_t max_levels) {
  if (delta < Rational(0) || delta > Rational(1)) throw InvalidArgument("delta must lie in [0,1]");
  if (k > 62) throw InvalidArgument("k must be at most 62");
  if (spine.source().free().density() < delta)
    throw InvalidArgument("spine free set has density below " + to_string(delta));
  const Rational bound = delta * (Rational(1) - Rational(1, std::int64_t{1} << k));
  const auto rep = spine.preimage_report(p);
  if (rep.ratio >= bound) return {p, bound, rep.ratio, 0};
  const auto lev = static_cast<std::int64_t>(rep.levels.size());
  const std::uint64_t m = p.height();
  for (std::uint64_t h = 1; h <= max_levels; ++h) {
    const auto ht = static_cast<std::int64_t>(spine.free_coordinate(m + h));
    const Rational ratio(lev + static_cast<std::int64_t>(h), ht);
    if (ratio >= bound) return {p.extended(LevelPattern(h)), bound, ratio, h};
  }
  throw CapExceeded("densify needs more than " + std::to_string(max_levels) + " splitting levels");
}

}  // namespace silverlab
