#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "silverlab/assignment.hpp"
#include "silverlab/choice.hpp"
#include "silverlab/dense_oracle.hpp"
#include "silverlab/descriptor.hpp"
#include "silverlab/rational.hpp"
#include "silverlab/speclang.hpp"
#include "silverlab/swr.hpp"

namespace silverlab {

/// A value of the wrong kind, a bad constructor argument, a missing
/// argument. Carries the location of the offending expression.
struct EvalError : Error {
  lang::Loc loc;
  EvalError(lang::Loc loc, const std::string& message);
};

/// Typed evaluation of DSL expressions. Names are looked up in the
/// document's bindings and evaluated on demand.
class Evaluator {
 public:
  explicit Evaluator(const lang::Document& doc) : doc_(&doc) {}

  std::uint64_t number(const lang::Expr& e) const;
  Rational rational(const lang::Expr& e) const;
  std::string string(const lang::Expr& e) const;
  /// A bare name used as a symbol, e.g. `eo` in `case=eo`.
  std::string symbol(const lang::Expr& e) const;
  Word word(const lang::Expr& e) const;
  std::vector<std::uint64_t> numbers(const lang::Expr& e) const;
  Alphabet alphabet(const lang::Expr& e) const;  // a number, or `inf`

  Coalition coalition(const lang::Expr& e) const;
  EventuallyPeriodicSeq tail(const lang::Expr& e, const Alphabet& alpha) const;
  PartialAssignment assignment(const lang::Expr& e) const;
  ChoiceFunction choice(const lang::Expr& e) const;
  UtilityStream stream(const lang::Expr& e) const;
  Family family(const lang::Expr& e) const;
  DenseOracle oracle(const lang::Expr& e) const;
  OpenSetApprox open_set(const lang::Expr& e) const;
  /// A list of `kind` values, or a single one.
  std::vector<const lang::Expr*> elements(const lang::Expr& e) const;

 private:
  const lang::Document* doc_;
  /// e with names replaced by what they are bound to.
  const lang::Expr& deref(const lang::Expr& e) const;
};

/// Argument access for a call or run statement: positional in order, then
/// by key.
class ArgList {
 public:
  ArgList(const std::vector<lang::Arg>& args, lang::Loc loc, std::string what);

  /// The `index`-th positional argument, or the keyed one.
  const lang::Expr& at(std::size_t index, const std::string& key) const;
  const lang::Expr* find(std::size_t index, const std::string& key) const;
  bool has(std::size_t index, const std::string& key) const { return find(index, key) != nullptr; }
  /// Keyword-only arguments.
  const lang::Expr& key(const std::string& k) const;
  bool has_key(const std::string& k) const { return keyed_.count(k) > 0; }
  /// Throws on keys outside `allowed` and on surplus positionals.
  void allow(std::size_t positional, const std::vector<std::string>& allowed) const;

 private:
  std::vector<const lang::Expr*> positional_;
  std::map<std::string, const lang::Expr*> keyed_;
  lang::Loc loc_;
  std::string what_;
};

/// What a directive printed. `ok` is false when any check it ran failed.
struct Report {
  std::string title;
  std::vector<std::string> lines;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::map<std::string, std::string> fields;  // machine-readable summary
  std::vector<std::string> certificates;      // serialized, when produced
  bool ok = true;

  void line(std::string s) { lines.push_back(std::move(s)); }
  void fail(std::string s) {
    ok = false;
    lines.push_back(std::move(s));
  }
  std::string text() const;
  std::string csv() const;
};

struct RunOptions {
  std::uint64_t seed = 0;
};

/// Runs one `run` statement. Directives: density, triples, irrelevance,
/// antidem, build_tree, escape, witness_f, swr_witness, forcing,
/// monochrome. Throws EvalError on bad arguments.
Report run_directive(const lang::Document& doc, const lang::Statement& run, const RunOptions& opts = {});

/// Every `run` statement of the document, in order.
std::vector<Report> run_document(const lang::Document& doc, const RunOptions& opts = {});

/// Names accepted by run_directive.
const std::vector<std::string>& directive_names();

/// Randomized sweeps driven by a seeded std::mt19937_64: `density`,
/// `irrelevance`, `swr`. Identical seed and count give identical reports.
Report sweep(const std::string& kind, std::uint64_t count, std::uint64_t seed);

}  // namespace silverlab
