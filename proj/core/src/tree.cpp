#include "silverlab/tree.hpp"

#include "silverlab/error.hpp"

namespace silverlab {

FiniteTree FiniteTree::closure(Alphabet alphabet, const std::vector<Word>& words) {
  const std::uint64_t k = alphabet.size();
  std::set<Word> nodes{Word{}};
  for (const auto& w : words) {
    for (auto v : w)
      if (v >= k) throw InvalidArgument("tree word " + to_string(w) + " leaves the alphabet");
    Word p;
    for (auto v : w) {
      p.push_back(v);
      nodes.insert(p);
    }
  }
  return FiniteTree(alphabet, std::move(nodes));
}

FiniteTree FiniteTree::cube(Alphabet alphabet, std::uint64_t height) {
  const std::uint64_t k = alphabet.size();
  std::set<Word> nodes{Word{}};
  std::vector<Word> frontier{Word{}};
  for (std::uint64_t d = 0; d < height; ++d) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (std::uint64_t j = 0; j < k; ++j) {
        Word c = w;
        c.push_back(j);
        nodes.insert(c);
        next.push_back(std::move(c));
      }
    }
    frontier = std::move(next);
  }
  return FiniteTree(alphabet, std::move(nodes));
}

std::vector<std::uint64_t> FiniteTree::children(const Word& t) const {
  std::vector<std::uint64_t> out;
  Word probe = t;
  probe.push_back(0);
  for (auto it = nodes_.lower_bound(probe); it != nodes_.end() && it->size() > t.size() &&
                                            std::equal(t.begin(), t.end(), it->begin());
       ++it) {
    if (it->size() == t.size() + 1) out.push_back(it->back());
  }
  return out;
}

std::vector<Word> FiniteTree::terminals() const {
  std::vector<Word> out;
  for (auto it = nodes_.begin(); it != nodes_.end(); ++it) {
    auto nx = std::next(it);
    if (nx == nodes_.end() || !is_prefix(*it, *nx)) out.push_back(*it);
  }
  return out;
}

std::uint64_t FiniteTree::height() const {
  std::uint64_t h = 0;
  for (const auto& w : nodes_) h = std::max<std::uint64_t>(h, w.size());
  return h;
}

std::vector<Word> FiniteTree::splitting_nodes() const {
  std::vector<Word> out;
  for (const auto& w : nodes_)
    if (children(w).size() >= 2) out.push_back(w);
  return out;
}

std::set<std::uint64_t> FiniteTree::levels() const {
  std::set<std::uint64_t> out;
  for (const auto& w : splitting_nodes()) out.insert(w.size() + 1);
  return out;
}

std::optional<Word> FiniteTree::spl_succ(const Word& t) const {
  if (!contains(t)) return std::nullopt;
  Word cur = t;
  while (true) {
    const auto kids = children(cur);
    if (kids.size() >= 2) return cur;
    if (kids.empty()) return std::nullopt;
    cur.push_back(kids.front());
  }
}

bool FiniteTree::is_uniform() const {
  const auto term = terminals();
  for (const auto& w : term)
    if (w.size() != term.front().size()) return false;
  return true;
}

std::string FiniteTree::to_text() const {
  std::string out;
  for (const auto& w : nodes_) {
    out += std::string(2 * w.size(), ' ') + to_string(w) + "\n";
  }
  return out;
}

LevelTree::LevelTree(Alphabet alphabet, std::vector<std::optional<std::uint64_t>> levels)
    : alphabet_(alphabet), pattern_(std::move(levels)) {
  for (const auto& v : pattern_)
    if (v && !alphabet_.admits(*v)) throw InvalidArgument("level value outside alphabet");
}

std::uint64_t LevelTree::split_count() const {
  std::uint64_t n = 0;
  for (const auto& v : pattern_) n += !v.has_value();
  return n;
}

std::set<std::uint64_t> LevelTree::levels() const {
  std::set<std::uint64_t> out;
  for (std::uint64_t d = 0; d < pattern_.size(); ++d)
    if (!pattern_[d]) out.insert(d + 1);
  return out;
}

bool LevelTree::contains(const Word& w) const {
  if (w.size() > pattern_.size()) return false;
  for (std::size_t d = 0; d < w.size(); ++d) {
    if (!alphabet_.admits(w[d])) return false;
    if (pattern_[d] && *pattern_[d] != w[d]) return false;
  }
  return true;
}

Word LevelTree::terminal(const Word& split_values) const {
  if (split_values.size() != split_count()) throw InvalidArgument("wrong number of split digits");
  Word out;
  std::size_t i = 0;
  for (const auto& v : pattern_) out.push_back(v ? *v : split_values[i++]);
  return out;
}

std::vector<Word> LevelTree::terminals(std::uint64_t cap) const {
  const std::uint64_t k = alphabet_.size();
  const std::uint64_t s = split_count();
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < s; ++i) {
    if (total > cap / k) throw CapExceeded("level tree has more than " + std::to_string(cap) + " terminals");
    total *= k;
  }
  std::vector<Word> out;
  Word digits(s, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    out.push_back(terminal(digits));
    for (std::size_t i = s; i-- > 0;) {
      if (++digits[i] < k) break;
      digits[i] = 0;
    }
  }
  return out;
}

FiniteTree LevelTree::materialize(std::uint64_t cap) const {
  return FiniteTree::closure(alphabet_, terminals(cap));
}

LevelTree LevelTree::extended(const std::vector<std::optional<std::uint64_t>>& more) const {
  auto p = pattern_;
  p.insert(p.end(), more.begin(), more.end());
  return LevelTree(alphabet_, std::move(p));
}

namespace {

Rational ratio_of(std::size_t levels, std::uint64_t height) {
  if (height == 0) return Rational(1);
  return Rational(static_cast<std::int64_t>(levels), static_cast<std::int64_t>(height));
}

}  // namespace

SplittingReport splitting_report(const FiniteTree& t) {
  SplittingReport r;
  r.split_nodes = t.splitting_nodes();
  for (const auto& w : r.split_nodes) r.levels.insert(w.size() + 1);
  r.height = t.height();
  r.ratio = ratio_of(r.levels.size(), r.height);
  return r;
}

SplittingReport splitting_report(const LevelTree& t) {
  SplittingReport r;
  r.levels = t.levels();
  r.height = t.height();
  r.ratio = ratio_of(r.levels.size(), r.height);
  return r;
}

FiniteTree tree_of(const Cylinder& c, std::uint64_t depth, std::uint64_t node_cap) {
  if (!c.alphabet().is_bounded())
    throw InvalidArgument("tree_of needs a bounded alphabet; query V_inf nodes on demand instead");
  if (depth < 1) throw InvalidArgument("depth must be at least 1");
  const auto lt = level_tree_of(c, depth);
  std::uint64_t nodes = 1, width = 1;
  for (const auto& v : lt.pattern()) {
    if (!v) width *= c.alphabet().size();
    nodes += width;
    if (nodes > node_cap) throw CapExceeded("tree exceeds node cap " + std::to_string(node_cap));
  }
  return lt.materialize(node_cap);
}

LevelTree level_tree_of(const Cylinder& c, std::uint64_t depth) {
  std::vector<std::optional<std::uint64_t>> pattern;
  for (std::uint64_t n = 0; n < depth; ++n) pattern.push_back(c.assignment().value(n));
  return LevelTree(c.alphabet(), std::move(pattern));
}

}  // namespace silverlab
