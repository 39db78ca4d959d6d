#include "silverlab/choice.hpp"

#include <algorithm>

#include "silverlab/error.hpp"

namespace silverlab {

namespace {

constexpr std::uint64_t kFarEnough = std::uint64_t{1} << 62;
constexpr std::uint64_t kTableCap = std::uint64_t{1} << 24;

std::vector<std::uint64_t> sorted_unique(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::uint64_t power_capped(std::uint64_t k, std::uint64_t m, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    if (total > cap / k) return cap + 1;
    total *= k;
  }
  return total;
}

bool same_set(const Coalition& a, const Coalition& b) {
  if (a == b) return true;
  const Coalition diff = (a & ~b) | (~a & b);
  return diff.is_finite() && diff.count_upto(kFarEnough) == 0;
}

}  // namespace

ChoiceFunction::ChoiceFunction(Rule rule, std::uint64_t k, std::vector<std::uint64_t> support)
    : rule_(rule), k_(k), alphabet_(Alphabet::bounded(k)), support_(sorted_unique(std::move(support))) {}

ChoiceFunction ChoiceFunction::dictator(std::uint64_t voter, std::uint64_t k) {
  return ChoiceFunction(Rule::Dictator, k, {voter});
}

ChoiceFunction ChoiceFunction::parity(std::vector<std::uint64_t> support) {
  return ChoiceFunction(Rule::Parity, 2, std::move(support));
}

ChoiceFunction ChoiceFunction::majority(std::vector<std::uint64_t> support, std::uint64_t tie,
                                        std::uint64_t k) {
  ChoiceFunction f(Rule::Majority, k, std::move(support));
  if (tie >= k) throw InvalidArgument("tie value outside alphabet");
  f.param_ = tie;
  return f;
}

ChoiceFunction ChoiceFunction::table(std::uint64_t k, std::vector<std::uint64_t> support, Word table) {
  const std::size_t given = support.size();
  ChoiceFunction f(Rule::Table, k, std::move(support));
  if (f.support_.size() != given) throw InvalidArgument("table support has repeated coordinates");
  const std::uint64_t want = power_capped(k, f.support_.size(), kTableCap);
  if (want > kTableCap) throw CapExceeded("truth table too large");
  if (table.size() != want)
    throw InvalidArgument("truth table needs " + std::to_string(want) + " entries, got " +
                          std::to_string(table.size()));
  for (auto v : table)
    if (v >= k) throw InvalidArgument("truth table entry outside alphabet");
  f.table_ = std::move(table);
  return f;
}

ChoiceFunction ChoiceFunction::constant(std::uint64_t value, std::uint64_t k) {
  ChoiceFunction f(Rule::Constant, k, {});
  if (value >= k) throw InvalidArgument("constant value outside alphabet");
  f.param_ = value;
  return f;
}

std::uint64_t ChoiceFunction::eval_on_support(const Word& values) const {
  if (values.size() != support_.size()) throw InvalidArgument("wrong number of support values");
  switch (rule_) {
    case Rule::Dictator:
      return values[0];
    case Rule::Parity: {
      std::uint64_t s = 0;
      for (auto v : values) s ^= (v & 1);
      return s;
    }
    case Rule::Majority: {
      std::vector<std::uint64_t> count(k_, 0);
      for (auto v : values) ++count[v];
      const auto best = *std::max_element(count.begin(), count.end());
      if (std::count(count.begin(), count.end(), best) > 1) return param_;
      return static_cast<std::uint64_t>(std::find(count.begin(), count.end(), best) - count.begin());
    }
    case Rule::Table: {
      std::uint64_t idx = 0;
      for (auto v : values) idx = idx * k_ + v;
      return table_[idx];
    }
    case Rule::Constant:
      return param_;
  }
  return 0;
}

std::string ChoiceFunction::to_dsl() const {
  const std::set<std::uint64_t> s(support_.begin(), support_.end());
  const std::string kk = k_ == 2 ? "" : "K=" + std::to_string(k_);
  switch (rule_) {
    case Rule::Dictator:
      return "dictator(" + std::to_string(support_[0]) + (kk.empty() ? "" : ", " + kk) + ")";
    case Rule::Parity:
      return "parity{" + format_set(s) + "}";
    case Rule::Majority:
      return "majority{" + format_set(s) + "; tie=" + std::to_string(param_) +
             (kk.empty() ? "" : "; " + kk) + "}";
    case Rule::Table: {
      std::string t;
      for (auto v : table_) t += std::to_string(v) + (k_ > 10 ? "," : "");
      if (k_ > 10 && !t.empty()) t.pop_back();
      return "table(K=" + std::to_string(k_) + ", support{" + format_set(s) + "}, \"" + t + "\")";
    }
    case Rule::Constant:
      return "constant(" + std::to_string(param_) + (kk.empty() ? "" : ", " + kk) + ")";
  }
  return {};
}

OpenSetApprox OpenSetApprox::of(std::vector<std::map<std::uint64_t, std::uint64_t>> cylinders) {
  if (cylinders.empty()) throw InvalidArgument("open set needs at least one cylinder");
  OpenSetApprox b;
  for (const auto& c : cylinders)
    for (const auto& kv : c) b.depth = std::max(b.depth, kv.first + 1);
  b.cylinders = std::move(cylinders);
  return b;
}

std::string OpenSetApprox::to_dsl() const {
  std::string s = "open(depth=" + std::to_string(depth);
  for (const auto& c : cylinders) {
    s += ", {";
    bool first = true;
    for (const auto& [n, v] : c) {
      s += (first ? "" : ",") + std::to_string(n) + ":" + std::to_string(v);
      first = false;
    }
    s += "}";
  }
  return s + ")";
}

namespace {

template <class Filter>
IrrelevanceResult decide(const ChoiceFunction& F, const PartialAssignment& f,
                         std::vector<std::uint64_t> pivots, const SearchOptions& opts, Filter&& keep) {
  const std::uint64_t k = F.k();
  const std::uint64_t total = power_capped(k, pivots.size(), opts.max_evaluations);
  if (total > opts.max_evaluations)
    throw CapExceeded("cap exceeded: " + std::to_string(pivots.size()) + " coordinates of b to enumerate, " +
                      "more than " + std::to_string(opts.max_evaluations) + " completions");
  IrrelevanceResult r{IrrelevanceResult::Verdict::Vacuous};
  r.pivots = pivots;
  Word digits(pivots.size(), 0);
  std::optional<Completion> reference;
  std::uint64_t ref_value = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Completion c{f, 0, {}};
    for (std::size_t i = 0; i < pivots.size(); ++i) c.overrides[pivots[i]] = digits[i];
    if (keep(c)) {
      const std::uint64_t v = F.eval(c);
      ++r.evaluations;
      if (!reference) {
        reference = c;
        ref_value = v;
      } else if (v != ref_value) {
        r.verdict = IrrelevanceResult::Verdict::Relevant;
        r.witness.emplace(*reference, c);
        return r;
      }
    }
    for (std::size_t i = pivots.size(); i-- > 0;) {
      if (++digits[i] < k) break;
      digits[i] = 0;
    }
  }
  if (reference) {
    r.verdict = IrrelevanceResult::Verdict::Irrelevant;
    r.value = ref_value;
  }
  return r;
}

void check_inputs(const ChoiceFunction& F, const Coalition& b, const PartialAssignment& f) {
  if (!(F.alphabet() == f.alphabet()))
    throw InvalidArgument("choice function over K=" + F.alphabet().to_string() + ", assignment over K=" +
                          f.alphabet().to_string());
  if (!same_set(b, f.free())) throw InvalidArgument("assignment's free set differs from b");
}

}  // namespace

IrrelevanceResult is_irrelevant(const ChoiceFunction& F, const Coalition& b, const PartialAssignment& f,
                                const SearchOptions& opts) {
  check_inputs(F, b, f);
  std::vector<std::uint64_t> pivots;
  for (auto s : F.support())
    if (b.contains(s)) pivots.push_back(s);
  return decide(F, f, std::move(pivots), opts, [](const Completion&) { return true; });
}

IrrelevanceResult h_almost_irrelevant(const ChoiceFunction& F, const Coalition& b,
                                      const PartialAssignment& f, const OpenSetApprox& B,
                                      const SearchOptions& opts) {
  check_inputs(F, b, f);
  if (B.cylinders.empty()) throw InvalidArgument("open set must be nonempty");
  std::vector<std::uint64_t> pivots;
  for (auto s : F.support())
    if (b.contains(s)) pivots.push_back(s);
  for (const auto& c : B.cylinders)
    for (const auto& kv : c)
      if (b.contains(kv.first)) pivots.push_back(kv.first);
  pivots = sorted_unique(std::move(pivots));
  return decide(F, f, std::move(pivots), opts, [&B](const Completion& c) { return B.contains(c); });
}

bool Family::admits(const Coalition& b) const {
  switch (kind) {
    case Kind::FinPlus:
      return b.is_infinite();
    case Kind::DensePlus: {
      const Rational d = b.density();
      return delta > Rational(0) ? d >= delta : d > Rational(0);
    }
    case Kind::SingletonStar: {
      const Coalition c = ~b;
      return c.is_finite() && c.count_upto(kFarEnough) <= 1;
    }
    case Kind::FinStar:
      return b.is_cofinite();
  }
  return false;
}

std::string Family::to_dsl() const {
  switch (kind) {
    case Kind::FinPlus:
      return "Finplus";
    case Kind::DensePlus:
      return "Dplus(" + format_rational(delta) + ")";
    case Kind::SingletonStar:
      return "Sstar";
    case Kind::FinStar:
      return "Fstar";
  }
  return {};
}

std::string Family::describe() const {
  switch (kind) {
    case Kind::FinPlus:
      return "Fin+ (infinite coalitions)";
    case Kind::DensePlus:
      return "D_" + format_rational(delta) + "+ (upper density " +
             (delta > Rational(0) ? ">= " + format_rational(delta) : std::string("> 0")) + ")";
    case Kind::SingletonStar:
      return "I* for I = singletons (all voters but at most one)";
    case Kind::FinStar:
      return "Fin* (cofinite coalitions)";
  }
  return {};
}

namespace {

PartialAssignment fixing(const ChoiceFunction& F, const Coalition& b,
                         std::map<std::uint64_t, std::uint64_t> values) {
  return PartialAssignment(F.alphabet(), b, std::move(values),
                           EventuallyPeriodicSeq::constant(F.alphabet(), 0));
}

}  // namespace

AntiDemocracyResult is_anti_democratic(const ChoiceFunction& F, const Family& family,
                                       const std::vector<Coalition>& candidates,
                                       const SearchOptions& opts) {
  AntiDemocracyResult out;
  const std::set<std::uint64_t> support(F.support().begin(), F.support().end());
  std::vector<std::string> searched;

  auto try_pair = [&](const Coalition& b, const PartialAssignment& f) {
    const auto r = is_irrelevant(F, b, f, opts);
    if (!r.irrelevant()) return false;
    out.found = true;
    out.b = b;
    out.f = f;
    out.value = r.value;
    return true;
  };

  const Coalition canonical = ~Coalition::finite(support);
  if (family.admits(canonical)) {
    std::map<std::uint64_t, std::uint64_t> zeros;
    for (auto s : support) zeros[s] = 0;
    searched.push_back("canonical b = N minus the support");
    if (try_pair(canonical, fixing(F, canonical, zeros))) {
      out.search = searched.back();
      return out;
    }
  }

  if (family.kind == Family::Kind::SingletonStar) {
    searched.push_back("b = N minus one support voter, each fixed value");
    for (auto i : support) {
      const Coalition b = ~Coalition::finite({i});
      for (std::uint64_t v = 0; v < F.k(); ++v) {
        if (try_pair(b, fixing(F, b, {{i, v}}))) {
          out.search = searched.back();
          return out;
        }
      }
    }
  }

  std::size_t admitted = 0;
  for (const auto& b : candidates) {
    if (!family.admits(b)) continue;
    ++admitted;
    std::vector<std::uint64_t> outside;
    for (auto s : support)
      if (!b.contains(s)) outside.push_back(s);
    const std::uint64_t total = power_capped(F.k(), outside.size(), opts.max_evaluations);
    if (total > opts.max_evaluations) throw CapExceeded("cap exceeded fixing a candidate's complement");
    Word digits(outside.size(), 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::map<std::uint64_t, std::uint64_t> values;
      for (std::size_t i = 0; i < outside.size(); ++i) values[outside[i]] = digits[i];
      if (try_pair(b, fixing(F, b, values))) {
        out.search = "candidate coalitions";
        return out;
      }
      for (std::size_t i = outside.size(); i-- > 0;) {
        if (++digits[i] < F.k()) break;
        digits[i] = 0;
      }
    }
  }
  if (!candidates.empty())
    searched.push_back(std::to_string(admitted) + " of " + std::to_string(candidates.size()) +
                       " candidate coalitions in the family");
  for (std::size_t i = 0; i < searched.size(); ++i) out.search += (i ? "; " : "") + searched[i];
  if (out.search.empty()) out.search = "nothing in the family to search";
  return out;
}

}  // namespace silverlab
