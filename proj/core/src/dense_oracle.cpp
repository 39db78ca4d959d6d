#include "silverlab/dense_oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "silverlab/error.hpp"

namespace silverlab {

DenseOracle::DenseOracle(std::uint64_t k, std::vector<std::vector<State>> delta, std::vector<bool> accepting,
                         std::string name)
    : k_(k), delta_(std::move(delta)), name_(std::move(name)) {
  const std::size_t n = delta_.size();
  if (k_ < 2) throw InvalidArgument("dense oracle alphabet must have at least 2 letters");
  if (n == 0 || accepting.size() != n) throw InvalidArgument("dense oracle needs matching state tables");
  for (std::size_t q = 0; q < n; ++q) {
    if (delta_[q].size() != k_) throw InvalidArgument("dense oracle transition row has wrong width");
    for (auto r : delta_[q])
      if (r >= n) throw InvalidArgument("dense oracle transition leaves the state set");
    if (accepting[q]) std::fill(delta_[q].begin(), delta_[q].end(), static_cast<State>(q));
  }

  // States with an infinite path that never accepts: greatest fixpoint.
  std::vector<bool> escapes(n);
  for (std::size_t q = 0; q < n; ++q) escapes[q] = !accepting[q];
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (!escapes[q]) continue;
      bool any = false;
      for (auto r : delta_[q]) any = any || escapes[r];
      if (!any) {
        escapes[q] = false;
        changed = true;
      }
    }
  }
  forced_.resize(n);
  for (std::size_t q = 0; q < n; ++q) forced_[q] = !escapes[q];

  // Backward BFS from forced states gives shortest distances.
  std::vector<std::vector<State>> rev(n);
  for (std::size_t q = 0; q < n; ++q)
    for (auto r : delta_[q]) rev[r].push_back(static_cast<State>(q));
  constexpr auto kInf = std::numeric_limits<std::uint32_t>::max();
  dist_.assign(n, kInf);
  std::deque<State> queue;
  for (std::size_t q = 0; q < n; ++q)
    if (forced_[q]) {
      dist_[q] = 0;
      queue.push_back(static_cast<State>(q));
    }
  while (!queue.empty()) {
    auto r = queue.front();
    queue.pop_front();
    for (auto q : rev[r])
      if (dist_[q] == kInf) {
        dist_[q] = dist_[r] + 1;
        queue.push_back(q);
      }
  }
  for (std::size_t q = 0; q < n; ++q)
    if (dist_[q] == kInf) throw InvalidArgument("oracle " + name_ + " is not dense: state " + std::to_string(q) + " never gets inside");
}

DenseOracle DenseOracle::identity(std::uint64_t k) {
  return DenseOracle(k, {std::vector<State>(k, 0)}, {true}, "identity");
}

DenseOracle DenseOracle::contains(const Word& w, std::uint64_t k) {
  for (auto v : w)
    if (v >= k) throw InvalidArgument("contains: letter " + std::to_string(v) + " outside alphabet");
  if (w.empty()) return identity(k).renamed("contains(\"\")");
  const std::size_t m = w.size();
  std::vector<std::size_t> fail(m + 1, 0);
  for (std::size_t i = 1, j = 0; i < m; ++i) {
    while (j > 0 && w[i] != w[j]) j = fail[j];
    if (w[i] == w[j]) ++j;
    fail[i + 1] = j;
  }
  std::vector<std::vector<State>> delta(m + 1, std::vector<State>(k, 0));
  for (std::size_t q = 0; q <= m; ++q)
    for (std::uint64_t a = 0; a < k; ++a) {
      if (q < m && w[q] == a) {
        delta[q][a] = static_cast<State>(q + 1);
      } else if (q == 0) {
        delta[q][a] = 0;
      } else {
        delta[q][a] = delta[fail[q]][a];
      }
    }
  std::vector<bool> acc(m + 1, false);
  acc[m] = true;
  bool digits = k == 2;
  std::string lit;
  for (auto v : w) lit += std::to_string(v);
  std::string name = digits ? "contains(\"" + lit + "\")"
                            : "contains(" + to_string(w) + ", K=" + std::to_string(k) + ")";
  return DenseOracle(k, std::move(delta), std::move(acc), std::move(name));
}

DenseOracle DenseOracle::all_of(const std::vector<DenseOracle>& parts) {
  if (parts.empty()) throw InvalidArgument("allof needs at least one oracle");
  if (parts.size() == 1) return parts.front();
  const std::uint64_t k = parts.front().k();
  std::string name = "allof(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].k() != k) throw InvalidArgument("allof: oracles over different alphabets");
    name += (i ? ", " : "") + parts[i].name();
  }
  name += ")";
  using Tuple = std::vector<State>;
  std::map<Tuple, State> index;
  std::vector<Tuple> tuples;
  auto intern = [&](const Tuple& t) {
    auto [it, fresh] = index.emplace(t, static_cast<State>(tuples.size()));
    if (fresh) {
      tuples.push_back(t);
      if (tuples.size() > (1u << 20)) throw CapExceeded("allof: product automaton too large");
    }
    return it->second;
  };
  intern(Tuple(parts.size(), 0));
  std::vector<std::vector<State>> delta;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    std::vector<State> row(k);
    for (std::uint64_t a = 0; a < k; ++a) {
      Tuple next(parts.size());
      for (std::size_t p = 0; p < parts.size(); ++p) next[p] = parts[p].step(tuples[i][p], a);
      row[a] = intern(next);
    }
    delta.push_back(std::move(row));
  }
  // Acceptance of the product is "every component is forced", which keeps
  // insideness exact for the intersection of open sets.
  std::vector<bool> acc(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    bool all = true;
    for (std::size_t p = 0; p < parts.size(); ++p) all = all && parts[p].inside_state(tuples[i][p]);
    acc[i] = all;
  }
  return DenseOracle(k, std::move(delta), std::move(acc), std::move(name));
}

DenseOracle DenseOracle::renamed(std::string name) const {
  DenseOracle out = *this;
  out.name_ = std::move(name);
  return out;
}

DenseOracle::State DenseOracle::run(const Word& w, State from) const {
  State q = from;
  for (auto a : w) {
    if (a >= k_) throw InvalidArgument("word " + to_string(w) + " leaves the oracle alphabet");
    q = delta_[q][a];
  }
  return q;
}

Word DenseOracle::suffix_from(State q) const {
  Word out;
  while (!forced_[q]) {
    for (std::uint64_t a = 0; a < k_; ++a) {
      const State r = delta_[q][a];
      if (dist_[r] + 1 == dist_[q]) {
        out.push_back(a);
        q = r;
        break;
      }
    }
  }
  return out;
}

Word DenseOracle::extend(const Word& s) const {
  Word out = s;
  const Word tail = suffix_from(run(s));
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

}  // namespace silverlab
