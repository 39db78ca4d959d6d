#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "silverlab/error.hpp"
#include "silverlab/rational.hpp"

namespace silverlab::lang {

/// 1-based line and column (bytes).
struct Loc {
  std::size_t line = 1;
  std::size_t column = 1;
  friend bool operator==(const Loc&, const Loc&) = default;
};

/// `loc` is where the text can be fixed: the earliest position at which
/// inserting one token makes the document parse, and `expected` lists those
/// tokens. `detected` is where the parser got stuck; `loc` equals it when no
/// single insertion at or before it helps.
struct ParseError : Error {
  Loc loc;
  Loc detected;
  std::vector<std::string> expected;
  std::string reason;
  ParseError(Loc loc, const std::string& reason, std::vector<std::string> expected = {});
  ParseError(Loc loc, Loc detected, const std::string& reason, std::vector<std::string> expected);
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// `key=value`, or a positional value when key is empty.
struct Arg {
  std::string key;
  ExprPtr value;
};

/// One element of a braced list: `a`, `a..b` or `a:b`.
struct Item {
  enum class Sep { None, Range, Pair };
  ExprPtr first;
  ExprPtr second;
  Sep sep = Sep::None;
};

struct Expr {
  enum class Kind { Number, Rational, String, Name, List, Call, Braced, Not, Or, And };
  Kind kind = Kind::Number;
  Loc loc;
  std::uint64_t number = 0;
  Rational rational;
  std::string text;              // String, Name, and the head of Call / Braced ("" for `{..}`)
  std::vector<Arg> args;         // Call, and the `; key=value` options of Braced
  std::vector<Item> items;       // Braced
  std::vector<ExprPtr> elems;    // List; operands of Not / Or / And
};

/// Structural equality, locations ignored.
bool same(const Expr& a, const Expr& b);

struct Statement {
  enum class Kind { Binding, Run };
  Kind kind = Kind::Binding;
  Loc loc;
  std::string name;      // bound name, or the directive
  ExprPtr value;         // Binding
  std::vector<Arg> args; // Run
};

struct Document {
  std::vector<Statement> statements;

  /// The binding called `name`, if any.
  const Statement* binding(const std::string& name) const;
  std::vector<const Statement*> runs() const;
};

/// Locations ignored.
bool operator==(const Document& a, const Document& b);

/// Names that are never references: `inf`, `all`, `none`, `identity`,
/// `Finplus`, `Sstar`, `Fstar`.
bool is_builtin(const std::string& name);

/// Argument keys whose values are symbols rather than references.
bool is_symbol_key(const std::string& key);

/// Line-oriented: each statement is `name = expr` or `run op(args)`, `#`
/// starts a comment. Checks syntax, unique binding names, and that every
/// reference names an earlier binding. Throws ParseError.
Document parse(const std::string& text);

/// Canonical form; parse(print(d)) == d.
std::string print(const Document& d);
std::string print(const Expr& e);

/// Tokens of `text` as (offset, length), comments and blanks skipped and
/// newlines included. Used to build mutations; throws ParseError on lexical
/// errors.
std::vector<std::pair<std::size_t, std::size_t>> token_spans(const std::string& text);

}  // namespace silverlab::lang
