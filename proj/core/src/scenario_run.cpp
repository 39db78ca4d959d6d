#include <algorithm>
#include <functional>

#include "silverlab/delta_tree.hpp"
#include "silverlab/density.hpp"
#include "silverlab/forcing.hpp"
#include "silverlab/monochrome.hpp"
#include "silverlab/scenario.hpp"
#include "silverlab/vinf.hpp"

namespace silverlab {

using lang::Expr;

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string prefix_of(const Completion& c, std::uint64_t n) { return to_string(c.take(n)); }

struct Ctx {
  const Evaluator& ev;
  const ArgList& args;
  const RunOptions& opts;
  Report& r;

  std::uint64_t number_or(const std::string& key, std::uint64_t fallback) const {
    return args.has_key(key) ? ev.number(args.key(key)) : fallback;
  }
};

// ---- directives --------------------------------------------------------

void density(Ctx c) {
  c.args.allow(1, {"A", "horizons"});
  const Coalition a = c.ev.coalition(c.args.at(0, "A"));
  std::vector<std::uint64_t> hs{10, 100, 1000, 10000};
  if (c.args.has_key("horizons")) hs = c.ev.numbers(c.args.key("horizons"));
  const auto p = density_bounds(a, hs);
  c.r.line("coalition " + a.to_dsl());
  c.r.csv_header = {"horizon", "alpha"};
  for (const auto& [n, q] : p.samples) {
    c.r.line("alpha_" + std::to_string(n) + " = " + format_rational(q));
    c.r.csv_rows.push_back({std::to_string(n), format_rational(q)});
  }
  c.r.line("upper estimate " + format_rational(p.upper) + ", lower estimate " + format_rational(p.lower));
  if (p.exact) c.r.line("natural density " + format_rational(*p.exact));
  c.r.fields["upper"] = format_rational(p.upper);
  c.r.fields["lower"] = format_rational(p.lower);
  if (p.exact) c.r.fields["density"] = format_rational(*p.exact);
}

void triples(Ctx c) {
  c.args.allow(1, {"A", "horizon"});
  const Coalition a = c.ev.coalition(c.args.at(0, "A"));
  const std::uint64_t horizon = c.number_or("horizon", 10000);
  const auto t = find_triples(a, horizon);
  c.r.line(std::to_string(t.size()) + " triples");
  c.r.line("coalition " + a.to_dsl() + ", horizon " + std::to_string(horizon));
  if (!t.empty()) {
    std::string first;
    for (std::size_t i = 0; i < std::min<std::size_t>(t.size(), 8); ++i) first += (i ? ", " : "") + std::to_string(t[i]);
    c.r.line("first starts: " + first);
  }
  c.r.csv_header = {"index", "start"};
  for (std::size_t i = 0; i < t.size(); ++i) c.r.csv_rows.push_back({std::to_string(i), std::to_string(t[i])});
  c.r.fields["triples"] = std::to_string(t.size());
}

/// Re-evaluates a relevance witness through eval; true when the values differ
/// and both points lie in N_f.
bool witness_holds(const ChoiceFunction& F, const PartialAssignment& f, const std::pair<Completion, Completion>& w,
                   std::uint64_t depth) {
  const Cylinder cyl(f);
  return F.eval(w.first) != F.eval(w.second) && cylinder_member(w.first, cyl, depth).agrees &&
         cylinder_member(w.second, cyl, depth).agrees;
}

void irrelevance(Ctx c) {
  c.args.allow(3, {"F", "b", "f", "B"});
  const ChoiceFunction F = c.ev.choice(c.args.at(0, "F"));
  const Coalition b = c.ev.coalition(c.args.at(1, "b"));
  const PartialAssignment f = c.ev.assignment(c.args.at(2, "f"));
  const bool almost = c.args.has_key("B");
  const auto res = almost ? h_almost_irrelevant(F, b, f, c.ev.open_set(c.args.key("B")))
                          : is_irrelevant(F, b, f);
  const std::uint64_t depth = (F.support().empty() ? 0 : F.support().back()) + 1;
  c.r.line("F = " + F.to_dsl());
  c.r.line("b = " + b.to_dsl());
  c.r.csv_header = {"verdict", "value", "evaluations"};
  std::string verdict;
  switch (res.verdict) {
    case IrrelevanceResult::Verdict::Irrelevant:
      verdict = "irrelevant";
      c.r.line(std::string("irrelevant: F is constant ") + std::to_string(res.value) + " on N_f" +
               (almost ? " inside B" : ""));
      break;
    case IrrelevanceResult::Verdict::Vacuous:
      verdict = "vacuous";
      c.r.line("vacuous: N_f misses B");
      break;
    case IrrelevanceResult::Verdict::Relevant: {
      verdict = "relevant";
      c.r.line("relevant: F takes two values on N_f");
      const auto& w = *res.witness;
      c.r.line("  x = " + prefix_of(w.first, depth) + "..., F(x) = " + std::to_string(F.eval(w.first)));
      c.r.line("  y = " + prefix_of(w.second, depth) + "..., F(y) = " + std::to_string(F.eval(w.second)));
      if (witness_holds(F, f, w, std::max<std::uint64_t>(depth, 1)))
        c.r.line("witness re-evaluated: values differ, both points extend f");
      else
        c.r.fail("witness re-evaluation FAILED");
      break;
    }
  }
  c.r.line("evaluations " + std::to_string(res.evaluations));
  c.r.csv_rows.push_back({verdict, std::to_string(res.value), std::to_string(res.evaluations)});
  c.r.fields["verdict"] = verdict;
}

void antidem(Ctx c) {
  c.args.allow(2, {"F", "family", "candidates"});
  const ChoiceFunction F = c.ev.choice(c.args.at(0, "F"));
  const Family fam = c.ev.family(c.args.at(1, "family"));
  std::vector<Coalition> cands;
  if (c.args.has_key("candidates"))
    for (const Expr* e : c.ev.elements(c.args.key("candidates"))) cands.push_back(c.ev.coalition(*e));
  const auto res = is_anti_democratic(F, fam, cands);
  c.r.csv_header = {"found", "b", "value"};
  if (!res.found) {
    c.r.line("no: no irrelevant coalition found in " + fam.describe());
    c.r.line("searched: " + res.search);
    c.r.csv_rows.push_back({"no", "", ""});
    c.r.fields["verdict"] = "no";
    return;
  }
  c.r.line("yes: b = " + res.b->to_dsl());
  c.r.line("anti-democratic for " + fam.to_dsl() + ": b is irrelevant and lies in " + fam.describe());
  c.r.line("F = " + F.to_dsl() + " is constant " + std::to_string(res.value) + " on N_f, f = " + res.f->to_dsl());
  c.r.line("search: " + res.search);
  const bool admitted = fam.admits(*res.b);
  const auto again = is_irrelevant(F, *res.b, *res.f);
  if (admitted && again.irrelevant() && again.value == res.value)
    c.r.line("re-checked: b in family, F constant on N_f");
  else
    c.r.fail("re-check FAILED: " + std::string(admitted ? "" : "b not in family ") +
             (again.irrelevant() ? "" : "F not constant on N_f"));
  c.r.csv_rows.push_back({"yes", res.b->to_dsl(), std::to_string(res.value)});
  c.r.fields["verdict"] = "yes";
  c.r.fields["b"] = res.b->to_dsl();
}

void build_tree(Ctx c) {
  c.args.allow(0, {"oracles", "delta", "rounds"});
  std::vector<DenseOracle> oracles;
  for (const Expr* e : c.ev.elements(c.args.key("oracles"))) oracles.push_back(c.ev.oracle(*e));
  const Rational delta = c.ev.rational(c.args.key("delta"));
  const std::uint64_t rounds = c.number_or("rounds", 3);
  const auto t = build_delta_tree(oracles, delta, rounds);
  c.r.csv_header = {"round", "oracle", "lev", "ht", "ratio", "bound", "members_ok"};
  for (const auto& a : t.rounds) {
    const std::string bound = a.bound ? format_rational(*a.bound) : "-";
    std::string s = "round " + std::to_string(a.round) + " [" + a.oracle + "]: |Lev| = " + std::to_string(a.lev) +
                    ", ht = " + std::to_string(a.ht) + ", ratio " + format_rational(a.ratio);
    if (a.bound) s += (a.bound_ok() ? " >= " : " < ") + bound + " = delta(1 - 1/n)";
    s += a.members_ok ? ", terminals inside D_n" : ", terminals NOT inside D_n";
    if (a.ok())
      c.r.line(s);
    else
      c.r.fail(s);
    c.r.csv_rows.push_back({std::to_string(a.round), a.oracle, std::to_string(a.lev), std::to_string(a.ht),
                            format_rational(a.ratio), bound, yes_no(a.members_ok)});
  }
  c.r.line(std::string("delta tree audit: ") + (t.ok() ? "all rounds pass" : "FAILED"));
  c.r.fields["rounds"] = std::to_string(t.rounds.size());
}

void escape(Ctx c) {
  c.args.allow(1, {"f", "depth", "stem_bound", "value_bound"});
  const PartialAssignment f = c.ev.assignment(c.args.at(0, "f"));
  const std::uint64_t depth = c.number_or("depth", 40);
  const std::uint64_t sb = c.number_or("stem_bound", 60);
  const std::uint64_t vb = c.number_or("value_bound", 60);
  const auto res = escape_witness(f, std::max(depth, sb));
  const WordPoint x{res.prefix, f.alphabet()};
  c.r.line("x = " + to_string(Word(res.prefix.begin(), res.prefix.begin() + std::min<std::size_t>(res.prefix.size(), 16))) + "...");
  c.r.line("n = " + std::to_string(res.n));
  const auto mem = cylinder_member(x, Cylinder(f), depth);
  if (mem.agrees)
    c.r.line("x extends f below " + std::to_string(depth));
  else
    c.r.fail("x leaves N_f at coordinate " + std::to_string(mem.at));
  const auto cn = in_Cn_prefix(res.prefix, res.n, sb, vb);
  if (!cn.inside)
    c.r.line("x is outside C_n up to stem bound " + std::to_string(sb) + " and value bound " + std::to_string(vb));
  else
    c.r.fail("x is inside C_n: " + cn.describe());
  c.r.csv_header = {"m", "a_m", "jump", "t_len", "disjoint"};
  for (const auto& s : res.stages)
    c.r.csv_rows.push_back({std::to_string(s.m), std::to_string(s.a_m), std::to_string(s.jump),
                            std::to_string(s.t_len), yes_no(s.disjoint)});
  c.r.fields["n"] = std::to_string(res.n);
}

void witness_f(Ctx c) {
  c.args.allow(1, {"f", "mode", "levels", "depth"});
  const PartialAssignment f = c.ev.assignment(c.args.at(0, "f"));
  const std::string mode = c.args.has_key("mode") ? c.ev.symbol(c.args.key("mode")) : "in";
  const std::uint64_t levels = c.number_or("levels", 5);
  const std::uint64_t depth = c.number_or("depth", 40);
  c.r.fields["mode"] = mode;
  if (mode == "in") {
    try {
      const auto w = witness_in_F(f, levels);
      c.r.line("x = " + to_string(w.x.take(16)) + "...");
      c.r.line("x lies in the G_n cylinders for n < " + std::to_string(levels) + ", so N_f meets F");
      const auto mem = cylinder_member(w.x, Cylinder(f), depth);
      if (!mem.agrees) c.r.fail("x leaves N_f at coordinate " + std::to_string(mem.at));
    } catch (const VerificationFailure& e) {
      c.r.fail(std::string("in-witness FAILED: ") + e.what());
    }
    return;
  }
  if (mode != "out") throw EvalError(c.args.key("mode").loc, "witness_f: mode must be in or out");
  const auto w = witness_out_F(f, levels, depth);
  if (!w.exists) {
    c.r.line("no out-witness: " + w.reason);
    return;
  }
  c.r.line("y = " + to_string(Word(w.prefix.begin(), w.prefix.begin() + std::min<std::size_t>(w.prefix.size(), 16))) + "...");
  c.r.line("y is not in F_" + std::to_string(w.n) + ", so N_f is not contained in F");
  c.r.line("n = a_0 + 2 = " + std::to_string(w.base_n) + (w.base_n_suffices ? " suffices" : " does not suffice"));
  const auto mem = cylinder_member(WordPoint{w.prefix, f.alphabet()}, Cylinder(f), depth);
  if (!mem.agrees) c.r.fail("y leaves N_f at coordinate " + std::to_string(mem.at));
  c.r.csv_header = {"k", "y_in_F_k"};
  for (std::size_t k = 0; k < w.in_level.size(); ++k) c.r.csv_rows.push_back({std::to_string(k), yes_no(w.in_level[k])});
  c.r.fields["n"] = std::to_string(w.n);
}

Case parse_case(const std::string& s, lang::Loc loc) {
  if (s == "eo") return Case::EPrecO;
  if (s == "oe") return Case::OPrecE;
  if (s == "sim") return Case::Equiv;
  throw EvalError(loc, "case must be eo, oe or sim");
}

Variant parse_variant(const std::string& s, lang::Loc loc) {
  if (s == "sefa") return Variant::SeFa;
  if (s == "pfa") return Variant::PFa;
  throw EvalError(loc, "variant must be sefa or pfa");
}

void swr_witness(Ctx c) {
  c.args.allow(1, {"f", "delta", "case", "variant", "horizon", "l"});
  const PartialAssignment f = c.ev.assignment(c.args.at(0, "f"));
  const Rational delta = c.args.has_key("delta") ? c.ev.rational(c.args.key("delta")) : Rational(3, 4);
  const Case which = c.args.has_key("case") ? parse_case(c.ev.symbol(c.args.key("case")), c.args.key("case").loc)
                                            : Case::EPrecO;
  const Variant v = c.args.has_key("variant")
                        ? parse_variant(c.ev.symbol(c.args.key("variant")), c.args.key("variant").loc)
                        : Variant::SeFa;
  CaseOptions o;
  o.horizon = c.number_or("horizon", o.horizon);
  if (c.args.has_key("l")) o.l = c.ev.number(c.args.key("l"));
  const auto b = case_witness(f, delta, which, v, o);
  const auto check = check_bundle(b);

  c.r.line("case " + to_string(which) + ", variant " + to_string(v));
  std::string dropped;
  for (std::size_t i = 0; i < b.dropped.size(); ++i) dropped += (i ? "," : "") + std::to_string(b.dropped[i]);
  c.r.line(b.moved_name + " drops coordinates {" + dropped + "} of x");
  if (!b.pi.map().empty()) c.r.line("pi = " + b.pi.to_string());
  std::string chain = b.chain.empty() ? "" : b.chain[0];
  for (std::size_t i = 0; i < b.links.size(); ++i)
    chain += std::string(" ") + relation_pretty(b.links[i]) + (b.hypothesis[i] ? "[case]" : "") + " " + b.chain[i + 1];
  c.r.line("chain: " + chain);
  c.r.csv_header = {"derivation", "steps", "valid", "conclusion"};
  for (std::size_t i = 0; i < b.derivations.size(); ++i) {
    const auto& d = b.derivations[i];
    const auto& res = i < check.results.size() ? check.results[i] : check_derivation(d.d);
    const std::string head = d.name + " (" + std::to_string(d.d.steps.size()) + (d.d.steps.size() == 1 ? " step): " : " steps): ");
    if (res.valid)
      c.r.line(head + "valid: conclusion " + relation_pretty(res.conclusion));
    else
      c.r.line(head + "invalid at step " + std::to_string(res.step) + ": " + res.reason);
    c.r.csv_rows.push_back({d.name, std::to_string(d.d.steps.size()), yes_no(res.valid),
                            res.valid ? relation_symbol(res.conclusion) : ""});
  }
  if (check.valid)
    c.r.line("verdict: " + b.verdict);
  else
    c.r.fail("bundle check FAILED: " + check.failure);
  c.r.certificates.push_back(write_certificate(certificate_of(b)));
  c.r.fields["verdict"] = check.valid ? b.verdict : "invalid";
}

void forcing(Ctx c) {
  const std::string mode = c.args.has_key("mode") ? c.ev.symbol(c.args.key("mode")) : "meet";
  c.r.fields["mode"] = mode;
  if (mode == "meet") {
    c.args.allow(0, {"mode", "oracles", "height"});
    std::vector<DenseOracle> oracles;
    for (const Expr* e : c.ev.elements(c.args.key("oracles"))) oracles.push_back(c.ev.oracle(*e));
    UniformTree p = UniformTree::cube(c.number_or("height", 1));
    c.r.csv_header = {"step", "oracle", "height"};
    for (std::size_t i = 0; i < oracles.size(); ++i) {
      p = meet_dense(p, oracles[i]);
      c.r.csv_rows.push_back({std::to_string(i), oracles[i].name(), std::to_string(p.height())});
    }
    const auto terms = p.terminals();
    std::size_t bad = 0;
    for (const auto& o : oracles)
      for (const auto& t : terms) bad += o.inside(t) ? 0 : 1;
    c.r.line("met " + std::to_string(oracles.size()) + " dense sets, height " + std::to_string(p.height()) + ", " +
             std::to_string(terms.size()) + " terminals");
    if (bad == 0)
      c.r.line("every terminal lies inside every dense set");
    else
      c.r.fail(std::to_string(bad) + " terminal/dense-set pairs outside");
    return;
  }
  if (mode != "densify") throw EvalError(c.args.key("mode").loc, "forcing: mode must be meet or densify");
  c.args.allow(1, {"mode", "f", "delta", "k", "start"});
  const SpineMap spine(c.ev.assignment(c.args.at(0, "f")));
  const Rational delta = c.ev.rational(c.args.key("delta"));
  const std::uint64_t kmax = c.number_or("k", 6);
  UniformTree p = c.args.has_key("start") ? meet_dense(UniformTree::root(), c.ev.oracle(c.args.key("start")))
                                          : UniformTree::root();
  Rational last(0);
  c.r.csv_header = {"k", "bound", "ratio", "added"};
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    const auto res = densify(p, delta, k, spine);
    const bool ok = res.ratio >= res.bound && res.ratio >= last && res.tree.refines(p);
    const std::string s = "k = " + std::to_string(k) + ": ratio " + format_rational(res.ratio) +
                          (res.ratio >= res.bound ? " >= " : " < ") + format_rational(res.bound) +
                          " = delta(1 - 2^-k), " + std::to_string(res.added) + " levels added";
    if (ok)
      c.r.line(s);
    else
      c.r.fail(s + " FAILED");
    c.r.csv_rows.push_back({std::to_string(k), format_rational(res.bound), format_rational(res.ratio),
                            std::to_string(res.added)});
    last = res.ratio;
    p = res.tree;
  }
}

void monochrome(Ctx c) {
  c.args.allow(2, {"F", "f"});
  const ChoiceFunction F = c.ev.choice(c.args.at(0, "F"));
  const PartialAssignment f = c.ev.assignment(c.args.at(1, "f"));
  const auto res = monochromatize(F, Cylinder(f));
  c.r.line("F = " + F.to_dsl() + " is constant " + std::to_string(res.value) + " on N_g, g = " + res.sub.to_dsl());
  const auto again = is_irrelevant(F, res.sub.free(), res.sub);
  if (again.irrelevant() && again.value == res.value)
    c.r.line("re-checked by exhaustive irrelevance search");
  else
    c.r.fail("re-check FAILED");
  c.r.csv_header = {"stage", "block", "kept", "fixed", "evaluations"};
  for (std::size_t i = 0; i < res.stages.size(); ++i) {
    const auto& s = res.stages[i];
    c.r.csv_rows.push_back({std::to_string(i), format_set(s.block), format_set(s.kept),
                            std::to_string(s.fixed.size()), std::to_string(s.evaluations)});
  }
  c.r.fields["value"] = std::to_string(res.value);
}

using Runner = std::function<void(Ctx)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> m{
      {"density", density},       {"triples", triples},     {"irrelevance", irrelevance}, {"antidem", antidem},
      {"build_tree", build_tree}, {"escape", escape},       {"witness_f", witness_f},     {"swr_witness", swr_witness},
      {"forcing", forcing},       {"monochrome", monochrome}};
  return m;
}

}  // namespace

std::string Report::text() const {
  std::string out = "== " + title + " ==\n";
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::string Report::csv() const {
  std::string out;
  auto row = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + csv_field(r[i]);
    out += "\n";
  };
  if (!csv_header.empty()) row(csv_header);
  for (const auto& r : csv_rows) row(r);
  return out;
}

const std::vector<std::string>& directive_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : runners()) v.push_back(k);
    return v;
  }();
  return names;
}

Report run_directive(const lang::Document& doc, const lang::Statement& run, const RunOptions& opts) {
  const auto it = runners().find(run.name);
  if (it == runners().end()) throw EvalError(run.loc, "unknown directive '" + run.name + "'");
  Report r;
  r.title = run.name;
  const Evaluator ev(doc);
  const ArgList args(run.args, run.loc, run.name);
  try {
    it->second(Ctx{ev, args, opts, r});
  } catch (const EvalError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw EvalError(run.loc, std::string(run.name) + ": " + e.what());
  }
  return r;
}

std::vector<Report> run_document(const lang::Document& doc, const RunOptions& opts) {
  std::vector<Report> out;
  for (const auto* s : doc.runs()) out.push_back(run_directive(doc, *s, opts));
  return out;
}

}  // namespace silverlab
