#include <algorithm>

#include "silverlab/scenario.hpp"

namespace silverlab {

using lang::Expr;
using Kind = lang::Expr::Kind;

EvalError::EvalError(lang::Loc l, const std::string& message)
    : Error("line " + std::to_string(l.line) + ", column " + std::to_string(l.column) + ": " + message), loc(l) {}

namespace {

std::string kind_name(const Expr& e) {
  switch (e.kind) {
    case Kind::Number:
      return "number";
    case Kind::Rational:
      return "fraction";
    case Kind::String:
      return "string";
    case Kind::Name:
      return "name '" + e.text + "'";
    case Kind::List:
      return "list";
    case Kind::Call:
      return e.text + "(..)";
    case Kind::Braced:
      return e.text + "{..}";
    case Kind::Not:
    case Kind::Or:
    case Kind::And:
      return "coalition expression";
  }
  return "expression";
}

[[noreturn]] void wrong(const Expr& e, const std::string& wanted) {
  throw EvalError(e.loc, "expected " + wanted + ", got " + kind_name(e));
}

/// Runs `body`, relabelling library errors with the expression's location.
template <class F>
auto located(const Expr& e, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const EvalError&) {
    throw;
  } catch (const Error& err) {
    throw EvalError(e.loc, err.what());
  }
}

Word digits(const Expr& e, const std::string& s) {
  Word w;
  for (char c : s) {
    if (c < '0' || c > '9') throw EvalError(e.loc, "expected digits, got \"" + s + "\"");
    w.push_back(static_cast<std::uint64_t>(c - '0'));
  }
  return w;
}

}  // namespace

// ---- arguments ---------------------------------------------------------

ArgList::ArgList(const std::vector<lang::Arg>& args, lang::Loc loc, std::string what)
    : loc_(loc), what_(std::move(what)) {
  for (const auto& a : args) {
    if (a.key.empty()) {
      positional_.push_back(a.value.get());
    } else if (!keyed_.emplace(a.key, a.value.get()).second) {
      throw EvalError(a.value->loc, what_ + ": argument '" + a.key + "' given twice");
    }
  }
}

const Expr* ArgList::find(std::size_t index, const std::string& key) const {
  const Expr* byPos = index < positional_.size() ? positional_[index] : nullptr;
  auto it = key.empty() ? keyed_.end() : keyed_.find(key);
  const Expr* byKey = it == keyed_.end() ? nullptr : it->second;
  if (byPos && byKey) throw EvalError(byKey->loc, what_ + ": '" + key + "' given twice");
  return byPos ? byPos : byKey;
}

const Expr& ArgList::key(const std::string& k) const {
  auto it = keyed_.find(k);
  if (it == keyed_.end()) throw EvalError(loc_, what_ + ": missing argument '" + k + "'");
  return *it->second;
}

const Expr& ArgList::at(std::size_t index, const std::string& key) const {
  if (const Expr* e = find(index, key)) return *e;
  throw EvalError(loc_, what_ + ": missing argument '" + (key.empty() ? std::to_string(index + 1) : key) + "'");
}

void ArgList::allow(std::size_t positional, const std::vector<std::string>& allowed) const {
  if (positional_.size() > positional)
    throw EvalError(positional_[positional]->loc, what_ + ": too many positional arguments");
  for (const auto& [k, e] : keyed_)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw EvalError(e->loc, what_ + ": unknown argument '" + k + "'");
}

// ---- evaluator ---------------------------------------------------------

const Expr& Evaluator::deref(const Expr& e) const {
  const Expr* cur = &e;
  for (std::size_t guard = 0; cur->kind == Kind::Name && !lang::is_builtin(cur->text); ++guard) {
    const auto* s = doc_->binding(cur->text);
    if (!s || guard > doc_->statements.size()) throw EvalError(cur->loc, "unknown name '" + cur->text + "'");
    cur = s->value.get();
  }
  return *cur;
}

std::uint64_t Evaluator::number(const Expr& e0) const {
  const Expr& e = deref(e0);
  if (e.kind != Kind::Number) wrong(e, "number");
  return e.number;
}

Rational Evaluator::rational(const Expr& e0) const {
  const Expr& e = deref(e0);
  if (e.kind == Kind::Rational) return e.rational;
  if (e.kind == Kind::Number) {
    if (e.number > (std::uint64_t{1} << 62)) throw EvalError(e.loc, "number too large");
    return Rational(static_cast<std::int64_t>(e.number));
  }
  wrong(e, "number or fraction");
}

std::string Evaluator::string(const Expr& e0) const {
  const Expr& e = deref(e0);
  if (e.kind != Kind::String) wrong(e, "string");
  return e.text;
}

std::string Evaluator::symbol(const Expr& e) const {
  if (e.kind == Kind::Name || e.kind == Kind::String) return e.text;
  wrong(e, "symbol");
}

Word Evaluator::word(const Expr& e0) const {
  const Expr& e = deref(e0);
  if (e.kind == Kind::String) return digits(e, e.text);
  if (e.kind == Kind::List) {
    Word w;
    for (const auto& x : e.elems) w.push_back(number(*x));
    return w;
  }
  wrong(e, "word (list or digit string)");
}

std::vector<std::uint64_t> Evaluator::numbers(const Expr& e0) const {
  const Expr& e = deref(e0);
  if (e.kind == Kind::Number) return {e.number};
  if (e.kind != Kind::List) wrong(e, "number or list of numbers");
  std::vector<std::uint64_t> out;
  for (const auto& x : e.elems) out.push_back(number(*x));
  return out;
}

Alphabet Evaluator::alphabet(const Expr& e0) const {
  const Expr& e = deref(e0);
  if (e.kind == Kind::Name && e.text == "inf") return Alphabet::naturals();
  if (e.kind != Kind::Number) wrong(e, "alphabet size or inf");
  return located(e, [&] { return Alphabet::bounded(e.number); });
}

std::vector<const Expr*> Evaluator::elements(const Expr& e0) const {
  const Expr& e = deref(e0);
  if (e.kind != Kind::List) return {&e};
  std::vector<const Expr*> out;
  for (const auto& x : e.elems) out.push_back(x.get());
  return out;
}

namespace {

/// Members of a braced body: numbers and ranges a..b.
std::vector<std::uint64_t> braced_members(const Evaluator& ev, const Expr& e) {
  std::vector<std::uint64_t> out;
  for (const auto& it : e.items) {
    if (it.sep == lang::Item::Sep::Pair) throw EvalError(it.first->loc, "unexpected ':' in a member list");
    const std::uint64_t lo = ev.number(*it.first);
    const std::uint64_t hi = it.sep == lang::Item::Sep::Range ? ev.number(*it.second) : lo;
    if (hi < lo) throw EvalError(it.first->loc, "empty range");
    if (hi - lo > (std::uint64_t{1} << 20)) throw EvalError(it.first->loc, "range too long");
    for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::map<std::uint64_t, std::uint64_t> braced_pairs(const Evaluator& ev, const Expr& e) {
  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto& it : e.items) {
    if (it.sep != lang::Item::Sep::Pair) throw EvalError(it.first->loc, "expected coordinate:value");
    if (!out.emplace(ev.number(*it.first), ev.number(*it.second)).second)
      throw EvalError(it.first->loc, "coordinate listed twice");
  }
  return out;
}

void no_options(const Expr& e) {
  if (!e.args.empty()) throw EvalError(e.args.front().value->loc, "unexpected option '" + e.args.front().key + "'");
}

}  // namespace

Coalition Evaluator::coalition(const Expr& e0) const {
  const Expr& e = deref(e0);
  switch (e.kind) {
    case Kind::Name:
      if (e.text == "all") return Coalition::all();
      if (e.text == "none") return Coalition::none();
      break;
    case Kind::Not:
      return ~coalition(*e.elems[0]);
    case Kind::Or:
      return coalition(*e.elems[0]) | coalition(*e.elems[1]);
    case Kind::And:
      return coalition(*e.elems[0]) & coalition(*e.elems[1]);
    case Kind::Braced:
      if (e.text == "finite" || e.text.empty()) {
        no_options(e);
        const auto m = braced_members(*this, e);
        return Coalition::finite(std::set<std::uint64_t>(m.begin(), m.end()));
      }
      break;
    case Kind::Call: {
      ArgList args(e.args, e.loc, e.text);
      if (e.text == "arith") {
        args.allow(2, {});
        return located(e, [&] { return Coalition::arith(number(args.at(0, "")), number(args.at(1, ""))); });
      }
      if (e.text == "geom") {
        args.allow(2, {});
        return located(e, [&] { return Coalition::geom(number(args.at(0, "")), number(args.at(1, ""))); });
      }
      if (e.text == "periodic") {
        args.allow(2, {});
        const bool two = args.has(1, "");
        const std::string pre = two ? string(args.at(0, "")) : "";
        const std::string per = string(args.at(two ? 1 : 0, ""));
        return located(e, [&] { return Coalition::periodic(pre, per); });
      }
      break;
    }
    default:
      break;
  }
  wrong(e, "coalition");
}

EventuallyPeriodicSeq Evaluator::tail(const Expr& e0, const Alphabet& alpha) const {
  const Expr& e = deref(e0);
  if (e.kind == Kind::Call && (e.text == "periodic" || e.text == "values")) {
    ArgList args(e.args, e.loc, e.text);
    args.allow(2, {});
    const bool two = args.has(1, "");
    const Word pre = two ? word(args.at(0, "")) : Word{};
    const Word per = word(args.at(two ? 1 : 0, ""));
    return located(e, [&] { return EventuallyPeriodicSeq(alpha, pre, per); });
  }
  wrong(e, "tail periodic(..) or values(..)");
}

PartialAssignment Evaluator::assignment(const Expr& e0) const {
  const Expr& e = deref(e0);
  if (e.kind != Kind::Call || e.text != "assign") wrong(e, "assign(..)");
  std::map<std::uint64_t, std::uint64_t> fixed;
  std::vector<lang::Arg> rest;
  for (const auto& a : e.args) {
    if (a.key.empty() && a.value->kind == Kind::Braced && a.value->text == "fix") {
      no_options(*a.value);
      for (const auto& [n, v] : braced_pairs(*this, *a.value))
        if (!fixed.emplace(n, v).second) throw EvalError(a.value->loc, "coordinate fixed twice");
    } else {
      rest.push_back(a);
    }
  }
  ArgList args(rest, e.loc, "assign");
  args.allow(0, {"K", "free", "tail"});
  const Alphabet alpha = args.has(0, "K") ? alphabet(args.at(0, "K")) : Alphabet::bounded(2);
  const Coalition free = args.has(0, "free") ? coalition(args.at(0, "free")) : Coalition::none();
  const auto t = args.has(0, "tail") ? tail(args.at(0, "tail"), alpha) : EventuallyPeriodicSeq::constant(alpha, 0);
  return located(e, [&] { return PartialAssignment(alpha, free, fixed, t); });
}

ChoiceFunction Evaluator::choice(const Expr& e0) const {
  const Expr& e = deref(e0);
  auto k_of = [&](const ArgList& a) { return a.has_key("K") ? number(a.key("K")) : 2; };
  if (e.kind == Kind::Call) {
    ArgList args(e.args, e.loc, e.text);
    if (e.text == "dictator") {
      args.allow(1, {"K"});
      return located(e, [&] { return ChoiceFunction::dictator(number(args.at(0, "")), k_of(args)); });
    }
    if (e.text == "constant") {
      args.allow(1, {"K"});
      return located(e, [&] { return ChoiceFunction::constant(number(args.at(0, "")), k_of(args)); });
    }
    if (e.text == "table") {
      std::vector<std::uint64_t> support;
      const Expr* entries = nullptr;
      std::vector<lang::Arg> rest;
      for (const auto& a : e.args) {
        if (a.key.empty() && a.value->kind == Kind::Braced && a.value->text == "support") {
          no_options(*a.value);
          support = braced_members(*this, *a.value);
        } else if (a.key.empty() && a.value->kind == Kind::String) {
          entries = a.value.get();
        } else {
          rest.push_back(a);
        }
      }
      ArgList targs(rest, e.loc, "table");
      targs.allow(0, {"K"});
      if (!entries) throw EvalError(e.loc, "table: missing entry string");
      const std::uint64_t k = k_of(targs);
      Word w;
      for (char c : entries->text) {
        if (c < '0' || c > '9') throw EvalError(entries->loc, "table entries must be digits");
        w.push_back(static_cast<std::uint64_t>(c - '0'));
      }
      return located(e, [&] { return ChoiceFunction::table(k, support, w); });
    }
  }
  if (e.kind == Kind::Braced && (e.text == "parity" || e.text == "majority")) {
    const auto support = braced_members(*this, e);
    ArgList opts(e.args, e.loc, e.text);
    if (e.text == "parity") {
      opts.allow(0, {});
      return located(e, [&] { return ChoiceFunction::parity(support); });
    }
    opts.allow(0, {"tie", "K"});
    return located(e, [&] { return ChoiceFunction::majority(support, number(opts.key("tie")), k_of(opts)); });
  }
  wrong(e, "choice function");
}

UtilityStream Evaluator::stream(const Expr& e0) const {
  const Expr& e = deref(e0);
  if (e.kind != Kind::Call || e.text != "stream") wrong(e, "stream(..)");
  ArgList args(e.args, e.loc, "stream");
  args.allow(0, {"Y", "prefix", "period"});
  const std::string levels = symbol(args.key("Y"));
  const std::string pre = args.has_key("prefix") ? string(args.key("prefix")) : "";
  return located(e, [&] { return UtilityStream::parse(levels, pre, string(args.key("period"))); });
}

Family Evaluator::family(const Expr& e0) const {
  const Expr& e = deref(e0);
  if (e.kind == Kind::Name) {
    if (e.text == "Finplus") return Family::fin_plus();
    if (e.text == "Sstar") return Family::singleton_star();
    if (e.text == "Fstar") return Family::fin_star();
  }
  if (e.kind == Kind::Call && e.text == "Dplus") {
    ArgList args(e.args, e.loc, "Dplus");
    args.allow(1, {});
    const Rational q = rational(args.at(0, ""));
    if (q < Rational(0) || q > Rational(1)) throw EvalError(e.loc, "Dplus: density must lie in [0, 1]");
    return Family::dense_plus(q);
  }
  wrong(e, "family Finplus, Dplus(q), Sstar or Fstar");
}

DenseOracle Evaluator::oracle(const Expr& e0) const {
  const Expr& e = deref(e0);
  if (e.kind == Kind::Name && e.text == "identity") return DenseOracle::identity();
  if (e.kind == Kind::Call) {
    ArgList args(e.args, e.loc, e.text);
    auto k_of = [&] { return args.has_key("K") ? number(args.key("K")) : 2; };
    if (e.text == "identity") {
      args.allow(0, {"K"});
      return located(e, [&] { return DenseOracle::identity(k_of()); });
    }
    if (e.text == "contains") {
      args.allow(1, {"K"});
      return located(e, [&] { return DenseOracle::contains(word(args.at(0, "")), k_of()); });
    }
    if (e.text == "ones") {
      args.allow(1, {});
      return located(e, [&] { return DenseOracle::ones(number(args.at(0, ""))); });
    }
    if (e.text == "all_of") {
      std::vector<DenseOracle> parts;
      for (const auto& a : e.args) {
        if (!a.key.empty()) throw EvalError(a.value->loc, "all_of: unexpected argument '" + a.key + "'");
        parts.push_back(oracle(*a.value));
      }
      return located(e, [&] { return DenseOracle::all_of(parts); });
    }
  }
  wrong(e, "dense oracle identity, contains(..), ones(n) or all_of(..)");
}

OpenSetApprox Evaluator::open_set(const Expr& e0) const {
  const Expr& e = deref(e0);
  if (e.kind == Kind::Name && e.text == "all") return OpenSetApprox::whole();
  if (e.kind != Kind::Call || e.text != "open") wrong(e, "open(..)");
  std::vector<std::map<std::uint64_t, std::uint64_t>> cyls;
  for (const auto& a : e.args) {
    if (a.key == "depth") continue;  // recomputed
    if (!a.key.empty() || a.value->kind != Kind::Braced || !a.value->text.empty())
      throw EvalError(a.value->loc, "open: expected {coordinate:value, ..}");
    no_options(*a.value);
    cyls.push_back(braced_pairs(*this, *a.value));
  }
  return located(e, [&] { return OpenSetApprox::of(cyls); });
}

}  // namespace silverlab
