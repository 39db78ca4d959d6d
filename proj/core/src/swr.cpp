#include "silverlab/swr.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "silverlab/density.hpp"
#include "silverlab/error.hpp"

namespace silverlab {

// ---- streams and permutations ------------------------------------------

UtilityStream::UtilityStream(std::string levels_, EventuallyPeriodicSeq seq_)
    : levels(std::move(levels_)), seq(std::move(seq_)) {
  if (levels.empty()) throw InvalidArgument("utility stream needs at least one level");
  if (!(seq.alphabet() == Alphabet::bounded(levels.size())))
    throw InvalidArgument("stream alphabet " + seq.alphabet().to_string() + " does not match levels \"" + levels + "\"");
}

UtilityStream UtilityStream::parse(const std::string& levels, const std::string& prefix, const std::string& period) {
  auto read = [&](const std::string& s) {
    Word w;
    for (char ch : s) {
      const auto at = levels.find(ch);
      if (at == std::string::npos) throw InvalidArgument(std::string("level '") + ch + "' not in \"" + levels + "\"");
      w.push_back(at);
    }
    return w;
  };
  return UtilityStream(levels, EventuallyPeriodicSeq(Alphabet::bounded(levels.size()), read(prefix), read(period)));
}

std::pair<std::string, std::string> UtilityStream::spelled() const {
  const auto c = seq.canonical();
  std::string pre, per;
  for (auto v : c.prefix()) pre += levels[v];
  for (auto v : c.period()) per += levels[v];
  return {pre, per};
}

std::string UtilityStream::to_string() const {
  const auto [pre, per] = spelled();
  return pre + "(" + per + ")";
}

FinitePermutation::FinitePermutation(std::map<std::uint64_t, std::uint64_t> map) {
  std::set<std::uint64_t> keys, values;
  for (const auto& [k, v] : map) {
    keys.insert(k);
    if (!values.insert(v).second) throw InvalidArgument("permutation is not injective at value " + std::to_string(v));
  }
  if (keys != values) throw InvalidArgument("permutation does not map its support onto itself");
  for (const auto& [k, v] : map)
    if (k != v) map_[k] = v;
}

FinitePermutation FinitePermutation::swaps(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
  std::map<std::uint64_t, std::uint64_t> m;
  for (const auto& [a, b] : pairs) {
    if (a == b) continue;
    if (m.count(a) || m.count(b)) throw InvalidArgument("transpositions are not disjoint");
    m[a] = b;
    m[b] = a;
  }
  return FinitePermutation(std::move(m));
}

FinitePermutation FinitePermutation::parse(const std::string& text) {
  std::map<std::uint64_t, std::uint64_t> m;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw InvalidArgument("bad permutation \"" + text + "\" at " + std::to_string(i) + ": " + what);
  };
  if (text == "()") return {};
  while (i < text.size()) {
    if (text[i] != '(') fail("expected '('");
    ++i;
    std::vector<std::uint64_t> cycle;
    while (true) {
      while (i < text.size() && text[i] == ' ') ++i;
      if (i < text.size() && text[i] == ')') break;
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a number");
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        if (v > (~std::uint64_t{0} - 9) / 10) fail("number too large");
        v = v * 10 + static_cast<std::uint64_t>(text[i++] - '0');
      }
      cycle.push_back(v);
    }
    ++i;
    if (cycle.size() < 2) fail("cycle needs two elements");
    for (std::size_t c = 0; c < cycle.size(); ++c) {
      if (m.count(cycle[c])) fail("element " + std::to_string(cycle[c]) + " repeats");
      m[cycle[c]] = cycle[(c + 1) % cycle.size()];
    }
  }
  return FinitePermutation(std::move(m));
}

std::uint64_t FinitePermutation::operator()(std::uint64_t n) const {
  auto it = map_.find(n);
  return it == map_.end() ? n : it->second;
}

std::string FinitePermutation::to_string() const {
  if (map_.empty()) return "()";
  std::string out;
  std::set<std::uint64_t> seen;
  for (const auto& [start, _] : map_) {
    if (seen.count(start)) continue;
    out += "(";
    std::uint64_t n = start;
    do {
      if (n != start) out += " ";
      out += std::to_string(n);
      seen.insert(n);
      n = map_.at(n);
    } while (n != start);
    out += ")";
  }
  return out;
}

EventuallyPeriodicSeq patch(const EventuallyPeriodicSeq& x, const std::map<std::uint64_t, std::uint64_t>& values) {
  if (values.empty()) return x;
  const std::uint64_t old = x.prefix().size();
  Word prefix = x.take(std::max<std::uint64_t>(values.rbegin()->first + 1, old));
  Word period = x.period();
  const std::uint64_t shift = (prefix.size() - old) % period.size();
  std::rotate(period.begin(), period.begin() + static_cast<std::ptrdiff_t>(shift), period.end());
  for (const auto& [n, v] : values) {
    if (!x.alphabet().admits(v)) throw InvalidArgument("patched value outside alphabet");
    prefix[n] = v;
  }
  return EventuallyPeriodicSeq(x.alphabet(), std::move(prefix), std::move(period)).canonical();
}

UtilityStream permute(const FinitePermutation& pi, const UtilityStream& x) {
  std::map<std::uint64_t, std::uint64_t> values;
  for (const auto& [n, m] : pi.map()) values[n] = x.at(m);
  return UtilityStream(x.levels, patch(x.seq, values));
}

// ---- steps and derivations ---------------------------------------------

std::string relation_symbol(Relation r) { return r == Relation::Strict ? "<" : "~"; }
std::string relation_pretty(Relation r) { return r == Relation::Strict ? "≺" : "∼"; }

DerivationStep DerivationStep::fa(FinitePermutation pi, UtilityStream source) {
  auto target = permute(pi, source);
  return DerivationStep{StepKind::FA, std::move(pi), 0, 0, std::move(source), std::move(target), Relation::Equiv};
}

DerivationStep DerivationStep::se(std::uint64_t i, std::uint64_t j, UtilityStream source, UtilityStream target) {
  return DerivationStep{StepKind::SE, {}, i, j, std::move(source), std::move(target), Relation::Strict};
}

DerivationStep DerivationStep::p(UtilityStream source, UtilityStream target) {
  return DerivationStep{StepKind::P, {}, 0, 0, std::move(source), std::move(target), Relation::Strict};
}

std::string DerivationStep::describe() const {
  switch (kind) {
    case StepKind::FA:
      return "FA perm=" + pi.to_string();
    case StepKind::SE:
      return "SE i=" + std::to_string(i) + " j=" + std::to_string(j);
    case StepKind::P:
      break;
  }
  return "P";
}

namespace {

struct Differences {
  std::vector<std::uint64_t> at;  // inside the joint window
  bool infinite = false;
  std::uint64_t window = 0;
};

/// Throws InvalidArgument when the joint period is too long.
Differences differences(const EventuallyPeriodicSeq& a, const EventuallyPeriodicSeq& b) {
  Differences d;
  d.window = a.joint_window(b);
  const std::uint64_t start = std::max(a.prefix().size(), b.prefix().size());
  for (std::uint64_t n = 0; n < d.window; ++n)
    if (a.at(n) != b.at(n)) {
      d.at.push_back(n);
      if (n >= start) d.infinite = true;
    }
  return d;
}

StepCheck bad(std::string reason, std::optional<std::uint64_t> at = std::nullopt) {
  return StepCheck{false, std::move(reason), at};
}

}  // namespace

StepCheck check_step(const DerivationStep& s) {
  if (s.source.levels != s.target.levels) return bad("source and target use different levels");
  try {
    switch (s.kind) {
      case StepKind::FA: {
        if (s.relation != Relation::Equiv) return bad("FA asserts ∼");
        const auto d = differences(permute(s.pi, s.source).seq, s.target.seq);
        if (!d.at.empty()) return bad("target differs from f_pi(source)", d.at.front());
        return {true, {}, {}};
      }
      case StepKind::SE: {
        if (s.relation != Relation::Strict) return bad("SE asserts ≺");
        if (s.i == s.j) return bad("SE needs i != j", s.i);
        const auto d = differences(s.source.seq, s.target.seq);
        if (d.infinite) return bad("source and target differ infinitely often", d.at.back());
        for (auto n : d.at)
          if (n != s.i && n != s.j) return bad("source and target differ outside {i, j}", n);
        const auto xi = s.source.at(s.i), yi = s.target.at(s.i), yj = s.target.at(s.j), xj = s.source.at(s.j);
        if (!(xi < yi && yi < yj && yj < xj)) return bad("pattern x(i) < y(i) < y(j) < x(j) fails", s.i);
        return {true, {}, {}};
      }
      case StepKind::P: {
        if (s.relation != Relation::Strict) return bad("P asserts ≺");
        const std::uint64_t window = s.source.seq.joint_window(s.target.seq);
        bool strict = false;
        for (std::uint64_t n = 0; n < window; ++n) {
          const auto a = s.source.at(n), b = s.target.at(n);
          if (a > b) return bad("target falls below source", n);
          strict = strict || a < b;
        }
        if (!strict) return bad("no strict improvement");
        return {true, {}, {}};
      }
    }
  } catch (const InvalidArgument& e) {
    return bad(std::string("alignment failure: ") + e.what());
  }
  return bad("unknown step kind");
}

DerivationCheck check_derivation(const Derivation& d) {
  DerivationCheck out;
  if (d.steps.empty()) {
    out.reason = "empty derivation";
    return out;
  }
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    out.step = i;
    if (i > 0 && !(d.steps[i].source == d.steps[i - 1].target)) {
      out.reason = "endpoint mismatch: source is not the previous target";
      return out;
    }
    const auto c = check_step(d.steps[i]);
    if (!c.valid) {
      out.reason = d.steps[i].describe() + ": " + c.reason;
      if (c.coordinate) out.reason += " (coordinate " + std::to_string(*c.coordinate) + ")";
      return out;
    }
    if (d.steps[i].relation == Relation::Strict) out.conclusion = Relation::Strict;
  }
  out.step = 0;
  out.valid = true;
  return out;
}

// ---- blocks and the o/e maps -------------------------------------------

namespace {

/// Periodic layout of c(m) = |U(x) ∩ [0, m]|: from `start` on, the parity of
/// c repeats with period `period` and c stays >= 2.
struct Layout {
  std::vector<std::uint64_t> ones;  // U(x) below start + period
  std::uint64_t start = 0;
  std::uint64_t period = 0;
  std::vector<std::uint64_t> count;  // c(m) for m < start + period
};

Layout layout(const EventuallyPeriodicSeq& x) {
  if (!(x.alphabet() == Alphabet::bounded(2))) throw InvalidArgument("expected a binary stream");
  const Word& per = x.period();
  const auto u = static_cast<std::uint64_t>(std::count(per.begin(), per.end(), 1));
  if (u == 0) throw InvalidArgument("U(x) is finite: the period of x has no 1");
  Layout l;
  std::uint64_t second = 0, seen = 0;
  for (std::uint64_t m = 0; seen < 2; ++m)
    if (x.at(m) == 1 && ++seen == 2) second = m;
  l.start = std::max<std::uint64_t>(x.prefix().size(), second);
  l.period = per.size() * (u % 2 == 1 ? 2 : 1);
  std::uint64_t c = 0;
  for (std::uint64_t m = 0; m < l.start + l.period; ++m) {
    if (x.at(m) == 1) {
      ++c;
      l.ones.push_back(m);
    }
    l.count.push_back(c);
  }
  return l;
}

/// Sequence of the rule `value(c(m), coordinate)` over coordinates, each
/// pair m spanning `width` coordinates.
template <class Rule>
EventuallyPeriodicSeq build(const Layout& l, std::uint64_t width, Alphabet alphabet, Rule rule) {
  Word prefix, period;
  for (std::uint64_t m = 0; m < l.start + l.period; ++m)
    for (std::uint64_t w = 0; w < width; ++w) (m < l.start ? prefix : period).push_back(rule(l.count[m], m * width + w));
  return EventuallyPeriodicSeq(alphabet, std::move(prefix), std::move(period)).canonical();
}

Coalition coalition_of(const EventuallyPeriodicSeq& s) { return Coalition::periodic(s.prefix(), s.period()); }

constexpr std::uint64_t kA = 0, kB = 1, kC = 2, kD = 3;

}  // namespace

std::pair<std::uint64_t, std::uint64_t> Decomposition::block(std::size_t k) const {
  if (k + 1 >= n.size()) throw InvalidArgument("block " + std::to_string(k) + " lies past the listed n_k");
  const std::uint64_t w = paired ? 2 : 1;
  return {w * n[k], w * n[k + 1]};
}

Decomposition decompose(const EventuallyPeriodicSeq& x, bool paired, std::size_t count) {
  const Layout l = layout(x);
  Decomposition d;
  d.paired = paired;
  for (std::uint64_t m = 0; d.n.size() < count; ++m)
    if (x.at(m) == 1) d.n.push_back(m);
  const std::uint64_t w = paired ? 2 : 1;
  const Alphabet two = Alphabet::bounded(2);
  d.initial = coalition_of(build(l, w, two, [](std::uint64_t c, std::uint64_t) { return c == 0 ? 1 : 0; }));
  d.even_blocks = coalition_of(build(l, w, two, [](std::uint64_t c, std::uint64_t) { return c % 2 == 1 ? 1 : 0; }));
  d.odd_blocks =
      coalition_of(build(l, w, two, [](std::uint64_t c, std::uint64_t) { return c >= 2 && c % 2 == 0 ? 1 : 0; }));
  return d;
}

std::string to_string(Variant v) { return v == Variant::SeFa ? "sefa" : "pfa"; }

std::string to_string(Case c) {
  switch (c) {
    case Case::EPrecO:
      return "eo";
    case Case::OPrecE:
      return "oe";
    case Case::Equiv:
      break;
  }
  return "sim";
}

OEPair oe_maps(const EventuallyPeriodicSeq& x, Variant v) {
  const Layout l = layout(x);
  // I_k with k even holds the m with c(m) odd; k odd, c(m) even and >= 2.
  auto in_even = [](std::uint64_t c) { return c % 2 == 1; };
  auto in_odd = [](std::uint64_t c) { return c >= 2 && c % 2 == 0; };
  if (v == Variant::SeFa) {
    const Alphabet four = Alphabet::bounded(4);
    auto pick = [](bool middle, std::uint64_t t) { return middle ? (t % 2 == 0 ? kB : kC) : (t % 2 == 0 ? kA : kD); };
    return {UtilityStream("abcd", build(l, 2, four, [&](std::uint64_t c, std::uint64_t t) { return pick(in_even(c), t); })),
            UtilityStream("abcd", build(l, 2, four, [&](std::uint64_t c, std::uint64_t t) { return pick(in_odd(c), t); }))};
  }
  const Alphabet two = Alphabet::bounded(2);
  return {UtilityStream("01", build(l, 1, two, [&](std::uint64_t c, std::uint64_t) -> std::uint64_t { return in_even(c); })),
          UtilityStream("01", build(l, 1, two, [&](std::uint64_t c, std::uint64_t) -> std::uint64_t { return in_odd(c); }))};
}

// ---- case witnesses ----------------------------------------------------

namespace {

/// FA(pi) when given, then one SE step per differing pair (SE+FA) or one P
/// step (P+FA), ending at `target`. Steps are built from the streams and
/// left for the checker to judge.
Derivation connect(const UtilityStream& source, const UtilityStream& target, const FinitePermutation* pi, Variant v) {
  Derivation d;
  UtilityStream cur = source;
  if (pi) {
    d.steps.push_back(DerivationStep::fa(*pi, cur));
    cur = d.steps.back().target;
  }
  const auto diff = differences(cur.seq, target.seq);
  if (diff.at.empty()) return d;
  if (v == Variant::PFa || diff.infinite) {
    if (v == Variant::PFa)
      d.steps.push_back(DerivationStep::p(cur, target));
    else
      d.steps.push_back(DerivationStep::se(diff.at[0], diff.at.size() > 1 ? diff.at[1] : diff.at[0], cur, target));
    return d;
  }
  std::set<std::uint64_t> pairs;
  for (auto n : diff.at) pairs.insert(n / 2);
  for (auto m : pairs) {
    const auto next =
        UtilityStream(cur.levels, patch(cur.seq, {{2 * m, target.at(2 * m)}, {2 * m + 1, target.at(2 * m + 1)}}));
    d.steps.push_back(DerivationStep::se(2 * m, 2 * m + 1, cur, next));
    cur = next;
  }
  return d;
}

void require_condition(const PartialAssignment& f, const Rational& delta) {
  if (!(f.alphabet() == Alphabet::bounded(2))) throw InvalidArgument("expected a condition over {0,1}");
  if (!f.is_silver()) throw InvalidArgument("expected infinitely many free coordinates");
  if (f.free().has_geom()) throw InvalidArgument("free set must be free of geometric atoms");
  if (delta <= Rational(2, 3) || delta > Rational(1)) throw InvalidArgument("delta must lie in (2/3, 1]");
  const Rational d = f.free().density();
  if (d < delta)
    throw InvalidArgument("f is not " + format_rational(delta) + "-dense: its free set has density " + format_rational(d));
}

}  // namespace

WitnessBundle case_witness(const PartialAssignment& f, const Rational& delta, Case which, Variant v,
                           const CaseOptions& opts) {
  require_condition(f, delta);
  const bool paired = v == Variant::SeFa;
  const std::uint64_t width = paired ? 2 : 1;
  const auto x = f.complete(1);

  // index[n] = |U(x) ∩ [0, n)|, for n below the horizon.
  const std::uint64_t H = opts.horizon;
  std::vector<std::uint64_t> index(H + 3), ones;
  for (std::uint64_t n = 0, c = 0; n < H + 3; ++n) {
    index[n] = c;
    if (x.at(n) == 1) {
      ones.push_back(n);
      ++c;
    }
  }
  const auto triples = find_triples(f.free(), H);
  if (triples.empty()) throw CapExceeded("no free triple below horizon " + std::to_string(H));

  WitnessBundle b{which, v, f, x, x, "y", {}, {}, {}, 0, {}, {}, {}, {}, {}, {}, H};
  std::map<std::uint64_t, std::uint64_t> zeros;
  const std::uint64_t w0 = triples.front();

  // The pair n_j, n_j + 1 inside the triple at h, j of the given parity.
  auto pair_in = [&](std::uint64_t h, std::uint64_t parity) { return index[h] % 2 == parity ? h : h + 1; };

  if (which == Case::Equiv) {
    const std::uint64_t p = pair_in(w0, 1);
    b.pair_indices = {index[p]};
    zeros = {{p, 0}, {p + 1, 0}};
  } else {
    const bool eo = which == Case::EPrecO;
    std::uint64_t l = 0;
    if (opts.l) {
      l = *opts.l;
      if (l >= ones.size() || ones[l] < w0 || ones[l] > w0 + 2)
        throw InvalidArgument("n_" + std::to_string(l) + " is not in the first triple");
      if (l % 2 != (eo ? 0u : 1u)) throw InvalidArgument("l has the wrong parity for this case");
    } else {
      l = index[w0];
      while (l % 2 != (eo ? 0u : 1u) || (eo && l == 0)) ++l;
    }
    b.l = l;
    const std::uint64_t nl = ones[l];
    zeros[nl] = 0;
    b.moved_name = "z";

    // Coordinates of E(l) (or O(l)) in increasing order.
    std::vector<std::uint64_t> block;
    for (std::uint64_t k = eo ? 0 : 1; k < l; k += 2)
      for (std::uint64_t t = width * ones[k]; t < width * ones[k + 1]; ++t) block.push_back(t);
    b.block_size = block.size();
    const std::uint64_t J = paired ? (block.size() + 2) / 2 + 1 : block.size() + 1;

    std::vector<std::uint64_t> starts;
    std::uint64_t last = nl;
    for (auto h : triples) {
      if (starts.size() == J) break;
      const std::uint64_t p = pair_in(h, eo ? 1 : 0);
      if (p <= last) continue;
      starts.push_back(p);
      last = p + 1;
    }
    if (starts.size() < J)
      throw CapExceeded("insufficient triples below horizon " + std::to_string(H) + ": need " + std::to_string(J) +
                        " pairs, found " + std::to_string(starts.size()));
    for (auto p : starts) {
      b.pair_indices.push_back(index[p]);
      zeros[p] = 0;
      zeros[p + 1] = 0;
    }
    // Swap the block into the slots the dropped pairs open up.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> swaps;
    if (paired) {
      std::vector<std::uint64_t> evens, odds;
      for (auto t : block) (t % 2 == 0 ? evens : odds).push_back(t);
      for (std::size_t j = 0; j < evens.size(); ++j) swaps.emplace_back(evens[j], 2 * starts[j]);
      for (std::size_t j = 0; j < odds.size(); ++j) swaps.emplace_back(odds[j], 2 * starts[j] + 1);
    } else {
      for (std::size_t j = 0; j < block.size(); ++j) swaps.emplace_back(block[j], starts[j]);
    }
    b.pi = FinitePermutation::swaps(swaps);
  }
  for (const auto& [n, _] : zeros) b.dropped.push_back(n);
  b.moved = patch(x, zeros);

  const auto ox = oe_maps(x, v);
  const auto om = oe_maps(b.moved, v);
  const std::string m = b.moved_name;
  auto add = [&](const std::string& src, const UtilityStream& s, const std::string& tgt, const UtilityStream& t,
                 const FinitePermutation* pi) {
    b.derivations.push_back({src + " -> " + tgt, src, tgt, connect(s, t, pi, v)});
  };
  const std::string oxn = "o(x)", exn = "e(x)", omn = "o(" + m + ")", emn = "e(" + m + ")";
  switch (which) {
    case Case::EPrecO:
      add(omn, om.o, exn, ox.e, &b.pi);
      add(oxn, ox.o, emn, om.e, &b.pi);
      b.chain = {omn, exn, oxn, emn};
      b.links = {Relation::Strict, Relation::Strict, Relation::Strict};
      b.hypothesis = {false, true, false};
      b.verdict = "x in F by the case assumption, z not in F";
      break;
    case Case::OPrecE:
      add(emn, om.e, oxn, ox.o, &b.pi);
      add(exn, ox.e, omn, om.o, &b.pi);
      b.chain = {emn, oxn, exn, omn};
      b.links = {Relation::Strict, Relation::Strict, Relation::Strict};
      b.hypothesis = {false, true, false};
      b.verdict = "x not in F by the case assumption, z in F";
      break;
    case Case::Equiv:
      add(oxn, ox.o, omn, om.o, nullptr);
      add(emn, om.e, exn, ox.e, nullptr);
      b.chain = {emn, exn, oxn, omn};
      b.links = {Relation::Strict, Relation::Equiv, Relation::Strict};
      b.hypothesis = {false, true, false};
      b.verdict = "x not in F by the case assumption, y in F";
      break;
  }
  return b;
}

BundleCheck check_bundle(const WitnessBundle& b) {
  BundleCheck out;
  auto fail = [&](std::string why) {
    out.failure = std::move(why);
    return out;
  };
  if (!(b.x == b.f.complete(1))) return fail("x is not f with every free coordinate set to 1");
  std::map<std::uint64_t, std::uint64_t> zeros;
  for (auto n : b.dropped) {
    if (!b.f.is_free(n)) return fail("dropped coordinate " + std::to_string(n) + " is not free in f");
    zeros[n] = 0;
  }
  if (!(b.moved == patch(b.x, zeros))) return fail(b.moved_name + " is not x with the dropped coordinates set to 0");
  if (!cylinder_member(b.moved, Cylinder(b.f), std::max<std::uint64_t>(b.horizon, 1)).agrees)
    return fail(b.moved_name + " leaves N_f");

  const auto ox = oe_maps(b.x, b.variant);
  const auto om = oe_maps(b.moved, b.variant);
  const std::map<std::string, const UtilityStream*> streams{{"o(x)", &ox.o},
                                                            {"e(x)", &ox.e},
                                                            {"o(" + b.moved_name + ")", &om.o},
                                                            {"e(" + b.moved_name + ")", &om.e}};
  auto lookup = [&](const std::string& name) -> const UtilityStream* {
    auto it = streams.find(name);
    return it == streams.end() ? nullptr : it->second;
  };
  for (const auto& cd : b.derivations) {
    const auto* s = lookup(cd.source);
    const auto* t = lookup(cd.target);
    if (!s || !t) return fail(cd.name + ": unknown stream name");
    if (cd.d.steps.empty()) return fail(cd.name + ": empty derivation");
    if (!(cd.d.steps.front().source == *s)) return fail(cd.name + ": does not start at " + cd.source);
    if (!(cd.d.steps.back().target == *t)) return fail(cd.name + ": does not end at " + cd.target);
    const auto r = check_derivation(cd.d);
    out.results.push_back(r);
    if (!r.valid) return fail(cd.name + ": step " + std::to_string(r.step) + ": " + r.reason);
    if (r.conclusion != Relation::Strict) return fail(cd.name + ": concludes ∼, not ≺");
  }
  for (std::size_t i = 0; i < b.links.size(); ++i) {
    if (b.hypothesis[i]) continue;
    const bool covered = std::any_of(b.derivations.begin(), b.derivations.end(), [&](const ClaimedDerivation& cd) {
      return cd.source == b.chain[i] && cd.target == b.chain[i + 1];
    });
    if (!covered) return fail("no derivation for " + b.chain[i] + " -> " + b.chain[i + 1]);
  }
  out.valid = true;
  return out;
}

// ---- certificates ------------------------------------------------------

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::string write_certificate(const Certificate& c) {
  std::ostringstream out;
  out << "cert v1\nlevels " << c.levels << "\n";
  for (const auto& e : c.entries) {
    out << "derivation " << e.name << " claim=" << relation_symbol(e.claim) << "\n";
    std::vector<const UtilityStream*> streams;
    for (std::size_t i = 0; i < e.d.steps.size(); ++i) {
      if (i == 0) streams.push_back(&e.d.steps[i].source);
      streams.push_back(&e.d.steps[i].target);
    }
    for (std::size_t i = 0; i < streams.size(); ++i) {
      const auto [pre, per] = streams[i]->spelled();
      out << "stream s" << i << " prefix=" << quoted(pre) << " period=" << quoted(per) << "\n";
    }
    for (std::size_t i = 0; i < e.d.steps.size(); ++i)
      out << e.d.steps[i].describe() << " s" << i << " s" << i + 1 << " " << relation_symbol(e.d.steps[i].relation)
          << "\n";
    out << "end\n";
  }
  return out.str();
}

Certificate read_certificate(const std::string& text) {
  Certificate c;
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  auto fail = [&](const std::string& what) -> void {
    throw InvalidArgument("certificate line " + std::to_string(no) + ": " + what);
  };
  auto next = [&]() {
    const bool ok = static_cast<bool>(std::getline(in, line));
    ++no;
    return ok;
  };
  auto relation = [&](const std::string& s) {
    if (s == "<") return Relation::Strict;
    if (s != "~") fail("expected '<' or '~', got \"" + s + "\"");
    return Relation::Equiv;
  };
  auto field = [&](const std::string& tok, const std::string& key) {
    if (tok.rfind(key + "=", 0) != 0) fail("expected " + key + "=");
    return tok.substr(key.size() + 1);
  };
  auto unquote = [&](const std::string& s) {
    if (s.size() < 2 || s.front() != '"' || s.back() != '"') fail("expected a quoted string");
    return s.substr(1, s.size() - 2);
  };
  auto number = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      fail("expected a number, got \"" + s + "\"");
    try {
      return static_cast<std::uint64_t>(std::stoull(s));
    } catch (const std::out_of_range&) {
      fail("number out of range");
    }
    return std::uint64_t{0};
  };
  auto split = [](const std::string& s) {
    std::istringstream ss(s);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
  };

  if (!next() || line != "cert v1") fail("expected \"cert v1\"");
  if (!next() || line.rfind("levels ", 0) != 0) fail("expected \"levels <chars>\"");
  c.levels = line.substr(7);
  if (c.levels.empty()) fail("no levels");

  while (next()) {
    if (line.empty()) continue;
    auto tok = split(line);
    if (tok.size() != 3 || tok[0] != "derivation") fail("expected \"derivation <name> claim=<rel>\"");
    Certificate::Entry e;
    e.name = tok[1];
    e.claim = relation(field(tok[2], "claim"));
    std::map<std::string, UtilityStream> streams;
    bool closed = false;
    while (next()) {
      if (line == "end") {
        closed = true;
        break;
      }
      tok = split(line);
      if (tok.empty()) fail("empty line inside a derivation");
      if (tok[0] == "stream") {
        if (tok.size() != 4) fail("expected \"stream <name> prefix=\"..\" period=\"..\"\"");
        if (streams.count(tok[1])) fail("stream " + tok[1] + " declared twice");
        try {
          streams.emplace(tok[1], UtilityStream::parse(c.levels, unquote(field(tok[2], "prefix")),
                                                      unquote(field(tok[3], "period"))));
        } catch (const InvalidArgument& err) {
          fail(err.what());
        }
        continue;
      }
      // Steps end with "<source> <target> <relation>".
      if (tok.size() < 4) fail("expected a step \"FA|SE|P ... <source> <target> <rel>\"");
      const auto get = [&](const std::string& name) {
        auto it = streams.find(name);
        if (it == streams.end()) fail("unknown stream " + name);
        return it->second;
      };
      const UtilityStream src = get(tok[tok.size() - 3]);
      const UtilityStream tgt = get(tok[tok.size() - 2]);
      const Relation rel = relation(tok.back());
      DerivationStep st = DerivationStep::p(src, tgt);
      st.relation = rel;
      if (tok[0] == "FA") {
        const auto from = line.find("perm=");
        const auto to = line.rfind(')');
        if (from == std::string::npos || to == std::string::npos || to < from) fail("expected perm=(..)");
        st.kind = StepKind::FA;
        try {
          st.pi = FinitePermutation::parse(line.substr(from + 5, to - from - 4));
        } catch (const InvalidArgument& err) {
          fail(err.what());
        }
      } else if (tok[0] == "SE") {
        if (tok.size() != 6) fail("expected \"SE i=.. j=.. <source> <target> <rel>\"");
        st.kind = StepKind::SE;
        st.i = number(field(tok[1], "i"));
        st.j = number(field(tok[2], "j"));
      } else if (tok[0] != "P" || tok.size() != 4) {
        fail("unknown step \"" + tok[0] + "\"");
      }
      e.d.steps.push_back(std::move(st));
    }
    if (!closed) fail("missing \"end\"");
    if (e.d.steps.empty()) fail("derivation " + e.name + " has no steps");
    c.entries.push_back(std::move(e));
  }
  return c;
}

Certificate certificate_of(const WitnessBundle& b) {
  Certificate c;
  c.levels = b.variant == Variant::SeFa ? "abcd" : "01";
  for (const auto& cd : b.derivations) {
    std::string name = cd.source + "->" + cd.target;
    c.entries.push_back({name, Relation::Strict, cd.d});
  }
  return c;
}

}  // namespace silverlab
