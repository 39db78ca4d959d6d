#include "silverlab/speclang.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace silverlab::lang {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string render(Loc loc, const std::string& message, const std::vector<std::string>& expected) {
  std::string s = "line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column) + ": " + message;
  if (!expected.empty()) s += "; expected " + join(expected, ", ");
  return s;
}

// ---- lexer -------------------------------------------------------------

enum class Tok { Ident, Number, Decimal, String, Punct, Newline, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier, digits, string contents, punctuation
  Loc loc;
  std::size_t offset = 0;
  std::size_t length = 0;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Ident:
      return "name '" + t.text + "'";
    case Tok::Number:
    case Tok::Decimal:
      return "number " + t.text;
    case Tok::String:
      return "string \"" + t.text + "\"";
    case Tok::Punct:
      return "'" + t.text + "'";
    case Tok::Newline:
      return "end of line";
    case Tok::End:
      break;
  }
  return "end of input";
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto push = [&](Tok kind, std::string text, std::size_t start, std::size_t start_col, std::size_t len) {
    out.push_back(Token{kind, std::move(text), Loc{line, start_col}, start, len});
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i, ++col;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i, ++col;
      continue;
    }
    if (c == '\n') {
      push(Tok::Newline, "\n", i, col, 1);
      ++i, ++line, col = 1;
      continue;
    }
    const std::size_t start = i, start_col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      push(Tok::Ident, src.substr(start, i - start), start, start_col, i - start);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      Tok kind = Tok::Number;
      if (i + 1 < src.size() && src[i] == '.' && std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
        ++i;
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        kind = Tok::Decimal;
      }
      push(kind, src.substr(start, i - start), start, start_col, i - start);
    } else if (c == '"' || c == '\'') {
      ++i;
      while (i < src.size() && src[i] != c && src[i] != '\n') ++i;
      if (i >= src.size() || src[i] != c)
        throw ParseError(Loc{line, start_col}, "unterminated string", {std::string("closing ") + c});
      ++i;
      push(Tok::String, src.substr(start + 1, i - start - 2), start, start_col, i - start);
    } else if (c == '.' && i + 1 < src.size() && src[i + 1] == '.') {
      i += 2;
      push(Tok::Punct, "..", start, start_col, 2);
    } else if (std::string("=(){}[],;:|&~/").find(c) != std::string::npos) {
      ++i;
      push(Tok::Punct, std::string(1, c), start, start_col, 1);
    } else {
      throw ParseError(Loc{line, col}, std::string("unexpected character '") + c + "'");
    }
    col += i - start;
  }
  out.push_back(Token{Tok::End, "", Loc{line, col}, src.size(), 0});
  return out;
}

// ---- parser ------------------------------------------------------------

const std::vector<std::string> kExprStart{"number", "string", "name", "'~'", "'('", "'['", "'{'"};

class Parser {
 public:
  /// Without `check_names`, only syntax is checked.
  explicit Parser(std::vector<Token> toks, bool check_names = true)
      : toks_(std::move(toks)), check_names_(check_names) {}

  Document document() {
    Document d;
    std::set<std::string> bound;
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Newline) {
        ++pos_;
        continue;
      }
      Statement s = statement();
      if (s.kind == Statement::Kind::Binding) {
        if (is_builtin(s.name) || s.name == "run") throw ParseError(s.loc, "'" + s.name + "' is reserved");
        if (!bound.insert(s.name).second) throw ParseError(s.loc, "name '" + s.name + "' is already bound");
        if (check_names_) resolve(*s.value, bound, /*self=*/s.name);
      } else if (check_names_) {
        for (const auto& a : s.args) resolve_arg(a, bound, "");
      }
      d.statements.push_back(std::move(s));
      const Token& t = peek();
      if (t.kind != Tok::Newline && t.kind != Tok::End) fail(t, {"end of line"});
    }
    return d;
  }

 private:
  std::vector<Token> toks_;
  bool check_names_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

  [[noreturn]] void fail(const Token& t, std::vector<std::string> expected) {
    throw ParseError(t.loc, "unexpected " + describe(t), std::move(expected));
  }

  bool is(const char* punct, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::Punct && t.text == punct;
  }

  const Token& expect(const char* punct, std::vector<std::string> also = {}) {
    if (!is(punct)) {
      also.insert(also.begin(), std::string("'") + punct + "'");
      fail(peek(), also);
    }
    return toks_[pos_++];
  }

  const Token& expect_ident(const std::string& what = "name") {
    if (peek().kind != Tok::Ident) fail(peek(), {what});
    return toks_[pos_++];
  }

  Statement statement() {
    Statement s;
    const Token& head = expect_ident("name or 'run'");
    s.loc = head.loc;
    if (head.text == "run" && peek().kind == Tok::Ident) {
      s.kind = Statement::Kind::Run;
      s.name = toks_[pos_++].text;
      expect("(");
      s.args = arguments(")");
      expect(")", {"','"});
      return s;
    }
    s.name = head.text;
    expect("=");
    s.value = expr();
    return s;
  }

  /// Comma-separated arguments up to `close`; `close` is left unconsumed.
  std::vector<Arg> arguments(const char* close) {
    std::vector<Arg> out;
    if (is(close)) return out;
    while (true) {
      out.push_back(argument());
      if (!is(",")) break;
      ++pos_;
    }
    return out;
  }

  Arg argument() {
    Arg a;
    if (peek().kind == Tok::Ident && is("=", 1)) {
      a.key = toks_[pos_].text;
      pos_ += 2;
    }
    a.value = expr();
    return a;
  }

  ExprPtr expr() {
    auto lhs = conj();
    while (is("|")) {
      const Loc loc = toks_[pos_++].loc;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Or;
      e->loc = loc;
      e->elems = {lhs, conj()};
      lhs = e;
    }
    return lhs;
  }

  ExprPtr conj() {
    auto lhs = unary();
    while (is("&")) {
      const Loc loc = toks_[pos_++].loc;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::And;
      e->loc = loc;
      e->elems = {lhs, unary()};
      lhs = e;
    }
    return lhs;
  }

  ExprPtr unary() {
    if (is("~")) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Not;
      e->loc = toks_[pos_++].loc;
      e->elems = {unary()};
      return e;
    }
    return primary();
  }

  static std::uint64_t to_number(const Token& t) {
    std::uint64_t v = 0;
    for (char ch : t.text) {
      const auto d = static_cast<std::uint64_t>(ch - '0');
      if (v > (~std::uint64_t{0} - d) / 10) throw ParseError(t.loc, "number " + t.text + " is too large");
      v = v * 10 + d;
    }
    return v;
  }

  static Rational to_decimal(const Token& t) {
    const auto dot = t.text.find('.');
    const std::string whole = t.text.substr(0, dot), frac = t.text.substr(dot + 1);
    if (frac.size() > 15 || whole.size() > 15) throw ParseError(t.loc, "decimal " + t.text + " is too long");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return Rational(std::stoll(whole) * scale + std::stoll(frac), scale);
  }

  ExprPtr primary() {
    const Token& t = peek();
    auto e = std::make_shared<Expr>();
    e->loc = t.loc;
    switch (t.kind) {
      case Tok::Number: {
        ++pos_;
        e->kind = Expr::Kind::Number;
        e->number = to_number(t);
        if (is("/")) {
          ++pos_;
          if (peek().kind != Tok::Number) fail(peek(), {"number"});
          const Token& d = toks_[pos_++];
          const std::uint64_t den = to_number(d);
          if (den == 0) throw ParseError(d.loc, "zero denominator");
          if (e->number > (std::uint64_t{1} << 62) || den > (std::uint64_t{1} << 62))
            throw ParseError(t.loc, "fraction is too large");
          e->kind = Expr::Kind::Rational;
          e->rational = Rational(static_cast<std::int64_t>(e->number), static_cast<std::int64_t>(den));
          e->number = 0;
        }
        return e;
      }
      case Tok::Decimal:
        ++pos_;
        e->kind = Expr::Kind::Rational;
        e->rational = to_decimal(t);
        return e;
      case Tok::String:
        ++pos_;
        e->kind = Expr::Kind::String;
        e->text = t.text;
        return e;
      case Tok::Ident:
        ++pos_;
        e->text = t.text;
        if (is("(")) {
          ++pos_;
          e->kind = Expr::Kind::Call;
          e->args = arguments(")");
          expect(")", {"','"});
        } else if (is("{")) {
          braced(*e);
        } else {
          e->kind = Expr::Kind::Name;
        }
        return e;
      case Tok::Punct:
        if (t.text == "(") {
          ++pos_;
          auto inner = expr();
          expect(")", {"'|'", "'&'"});
          return inner;
        }
        if (t.text == "[") {
          ++pos_;
          e->kind = Expr::Kind::List;
          if (!is("]")) {
            while (true) {
              e->elems.push_back(expr());
              if (!is(",")) break;
              ++pos_;
            }
          }
          expect("]", {"','"});
          return e;
        }
        if (t.text == "{") {
          braced(*e);
          return e;
        }
        break;
      default:
        break;
    }
    fail(t, kExprStart);
  }

  /// `{ items [; key=value]* }` at the current '{'.
  void braced(Expr& e) {
    e.kind = Expr::Kind::Braced;
    expect("{");
    if (!is("}") && !is(";")) {
      while (true) {
        Item it;
        it.first = expr();
        if (is("..") || is(":")) {
          it.sep = is("..") ? Item::Sep::Range : Item::Sep::Pair;
          ++pos_;
          it.second = expr();
        }
        e.items.push_back(std::move(it));
        if (!is(",")) break;
        ++pos_;
      }
    }
    while (is(";")) {
      ++pos_;
      Arg a;
      a.key = expect_ident("option name").text;
      expect("=");
      a.value = expr();
      e.args.push_back(std::move(a));
    }
    expect("}", {"','", "';'", "'..'", "':'"});
  }

  void resolve(const Expr& e, const std::set<std::string>& bound, const std::string& self) {
    switch (e.kind) {
      case Expr::Kind::Name:
        if (is_builtin(e.text)) return;
        if (e.text == self) throw ParseError(e.loc, "'" + e.text + "' refers to itself");
        if (!bound.count(e.text)) throw ParseError(e.loc, "unknown name '" + e.text + "'");
        return;
      case Expr::Kind::Call:
      case Expr::Kind::Braced:
        for (const auto& a : e.args) resolve_arg(a, bound, self);
        for (const auto& it : e.items) {
          resolve(*it.first, bound, self);
          if (it.second) resolve(*it.second, bound, self);
        }
        return;
      case Expr::Kind::List:
      case Expr::Kind::Not:
      case Expr::Kind::Or:
      case Expr::Kind::And:
        for (const auto& x : e.elems) resolve(*x, bound, self);
        return;
      default:
        return;
    }
  }

  void resolve_arg(const Arg& a, const std::set<std::string>& bound, const std::string& self) {
    if (is_symbol_key(a.key) && a.value->kind == Expr::Kind::Name) return;
    resolve(*a.value, bound, self);
  }
};

// ---- printer -----------------------------------------------------------

std::string print_rational(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator()) + ".0";
  return format_rational(q);
}

std::string print_args(const std::vector<Arg>& args, const std::string& sep) {
  std::vector<std::string> parts;
  for (const auto& a : args) parts.push_back((a.key.empty() ? "" : a.key + "=") + print(*a.value));
  return join(parts, sep);
}

/// ctx: 0 top, 1 left of '|', 2 right of '|' or left of '&', 3 right of '&' or under '~'.
std::string print_ctx(const Expr& e, int ctx) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return std::to_string(e.number);
    case Expr::Kind::Rational:
      return print_rational(e.rational);
    case Expr::Kind::String:
      return "\"" + e.text + "\"";
    case Expr::Kind::Name:
      return e.text;
    case Expr::Kind::List: {
      std::vector<std::string> parts;
      for (const auto& x : e.elems) parts.push_back(print(*x));
      return "[" + join(parts, ",") + "]";
    }
    case Expr::Kind::Call:
      return e.text + "(" + print_args(e.args, ", ") + ")";
    case Expr::Kind::Braced: {
      std::vector<std::string> parts;
      for (const auto& it : e.items) {
        std::string s = print(*it.first);
        if (it.sep == Item::Sep::Range) s += ".." + print(*it.second);
        if (it.sep == Item::Sep::Pair) s += ":" + print(*it.second);
        parts.push_back(std::move(s));
      }
      std::string body = join(parts, ",");
      for (const auto& a : e.args) body += "; " + a.key + "=" + print(*a.value);
      return e.text + "{" + body + "}";
    }
    case Expr::Kind::Not:
      return "~" + print_ctx(*e.elems[0], 3);
    case Expr::Kind::Or: {
      const std::string t = print_ctx(*e.elems[0], 1) + "|" + print_ctx(*e.elems[1], 2);
      return ctx > 1 ? "(" + t + ")" : t;
    }
    case Expr::Kind::And: {
      const std::string t = print_ctx(*e.elems[0], 2) + "&" + print_ctx(*e.elems[1], 3);
      return ctx > 2 ? "(" + t + ")" : t;
    }
  }
  return {};
}

// ---- error localization ------------------------------------------------

std::size_t offset_of(const std::string& text, Loc loc) {
  std::size_t line = 1, i = 0;
  for (; i < text.size() && line < loc.line; ++i)
    if (text[i] == '\n') ++line;
  return std::min(text.size(), i + loc.column - 1);
}

Loc loc_at(const std::string& text, std::size_t offset) {
  Loc l;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++l.line;
      l.column = 1;
    } else {
      ++l.column;
    }
  }
  return l;
}

bool parses(const std::string& text, bool check_names = true) {
  try {
    Parser(lex(text), check_names).document();
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

struct Candidate {
  std::string text;   // as inserted
  std::string label;  // as listed in `expected`
};

/// One representative per token kind, plus every name of the text (a
/// reference only resolves if the right name comes back) and a fresh one.
std::vector<Candidate> repair_candidates(const std::string& text) {
  std::vector<Candidate> out;
  for (const char* p : {"(", ")", "{", "}", "[", "]", ",", "=", ";", ":", "..", "|", "&", "~", "/"})
    out.push_back({std::string(" ") + p + " ", std::string("'") + p + "'"});
  out.push_back({"\n", "end of line"});
  out.push_back({" 0 ", "number"});
  out.push_back({" \"\" ", "string"});
  out.push_back({" run ", "'run'"});
  std::set<std::string> names{"all"};
  try {
    for (const auto& t : lex(text))
      if (t.kind == Tok::Ident && t.text != "run") names.insert(t.text);
  } catch (const ParseError&) {
  }
  std::string fresh = "repaired";
  while (names.count(fresh)) fresh += "_";
  names.insert(fresh);
  for (const auto& n : names) out.push_back({" " + n + " ", "name"});
  return out;
}

/// Offsets where an insertion cannot change the tokens (inside strings,
/// after a blank) or can only matter as a line break (inside comments).
enum class Spot { Code, Skip, Comment };

std::vector<Spot> spots(const std::string& text) {
  std::vector<Spot> out(text.size() + 1, Spot::Code);
  char quote = 0;
  bool comment = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      quote = 0;
      comment = false;
    } else if (quote) {
      if (c == quote) quote = 0;
    } else if (!comment && (c == '"' || c == '\'')) {
      quote = c;
    } else if (!comment && c == '#') {
      comment = true;
    }
    // out[i + 1] describes inserting between text[i] and text[i + 1]
    if (quote && c != '\n') out[i + 1] = Spot::Skip;
    else if (comment) out[i + 1] = Spot::Comment;
    else if (c == ' ' || c == '\t' || c == '\r') out[i + 1] = Spot::Skip;
  }
  return out;
}

ParseError locate_repair(const std::string& text, const ParseError& e) {
  const std::size_t stuck = offset_of(text, e.loc);
  const auto cands = repair_candidates(text);
  const auto where = spots(text);
  // Lines lex and parse independently, so a syntax error can only be repaired
  // on its own line; a name error may be repaired anywhere before it.
  const std::size_t first = parses(text, false) ? 0 : offset_of(text, Loc{e.loc.line, 1});
  std::size_t line_start = first;
  for (std::size_t at = first; at <= stuck; ++at) {
    if (at > 0 && text[at - 1] == '\n') line_start = at;
    if (where[at] == Spot::Skip) continue;
    const std::size_t line_end = std::min(text.find('\n', at), text.size());
    std::vector<std::string> fixes;
    for (const auto& c : cands) {
      if (where[at] == Spot::Comment && c.text != "\n") continue;
      if (std::find(fixes.begin(), fixes.end(), c.label) != fixes.end()) continue;
      // statements never span lines, so the edited line must parse alone
      const std::string line =
          text.substr(line_start, at - line_start) + c.text + text.substr(at, line_end - at);
      if (!parses(line, false)) continue;
      if (parses(text.substr(0, at) + c.text + text.substr(at))) fixes.push_back(c.label);
    }
    if (!fixes.empty()) return ParseError(loc_at(text, at), e.loc, e.reason, fixes);
  }
  return e;
}

bool same_args(const std::vector<Arg>& a, const std::vector<Arg>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].key != b[i].key || !same(*a[i].value, *b[i].value)) return false;
  return true;
}

}  // namespace

ParseError::ParseError(Loc loc_, const std::string& reason_, std::vector<std::string> expected_)
    : Error(render(loc_, reason_, expected_)), loc(loc_), detected(loc_), expected(std::move(expected_)),
      reason(reason_) {}

ParseError::ParseError(Loc loc_, Loc detected_, const std::string& reason_, std::vector<std::string> expected_)
    : Error(loc_ == detected_ ? render(loc_, reason_, expected_)
                              : render(loc_, "expected " + join(expected_, ", ") + " here", {}) + " (line " +
                                    std::to_string(detected_.line) + ", column " + std::to_string(detected_.column) +
                                    ": " + reason_ + ")"),
      loc(loc_),
      detected(detected_),
      expected(std::move(expected_)),
      reason(reason_) {}

bool same(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.number != b.number || a.rational != b.rational || a.text != b.text) return false;
  if (!same_args(a.args, b.args) || a.items.size() != b.items.size() || a.elems.size() != b.elems.size()) return false;
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    const auto &x = a.items[i], &y = b.items[i];
    if (x.sep != y.sep || !same(*x.first, *y.first)) return false;
    if (bool(x.second) != bool(y.second) || (x.second && !same(*x.second, *y.second))) return false;
  }
  for (std::size_t i = 0; i < a.elems.size(); ++i)
    if (!same(*a.elems[i], *b.elems[i])) return false;
  return true;
}

const Statement* Document::binding(const std::string& name) const {
  for (const auto& s : statements)
    if (s.kind == Statement::Kind::Binding && s.name == name) return &s;
  return nullptr;
}

std::vector<const Statement*> Document::runs() const {
  std::vector<const Statement*> out;
  for (const auto& s : statements)
    if (s.kind == Statement::Kind::Run) out.push_back(&s);
  return out;
}

bool operator==(const Document& a, const Document& b) {
  if (a.statements.size() != b.statements.size()) return false;
  for (std::size_t i = 0; i < a.statements.size(); ++i) {
    const auto &x = a.statements[i], &y = b.statements[i];
    if (x.kind != y.kind || x.name != y.name || !same_args(x.args, y.args)) return false;
    if (bool(x.value) != bool(y.value) || (x.value && !same(*x.value, *y.value))) return false;
  }
  return true;
}

bool is_builtin(const std::string& name) {
  static const std::set<std::string> names{"inf", "all", "none", "identity", "Finplus", "Sstar", "Fstar"};
  return names.count(name) > 0;
}

bool is_symbol_key(const std::string& key) {
  static const std::set<std::string> keys{"K", "Y", "case", "variant", "mode"};
  return keys.count(key) > 0;
}

Document parse(const std::string& text) {
  try {
    return Parser(lex(text)).document();
  } catch (const ParseError& e) {
    throw locate_repair(text, e);
  }
}

std::string print(const Expr& e) { return print_ctx(e, 0); }

std::string print(const Document& d) {
  std::string out;
  for (const auto& s : d.statements) {
    if (s.kind == Statement::Kind::Binding)
      out += s.name + " = " + print(*s.value) + "\n";
    else
      out += "run " + s.name + "(" + print_args(s.args, ", ") + ")\n";
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> token_spans(const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& t : lex(text))
    if (t.kind != Tok::End) out.emplace_back(t.offset, t.length);
  return out;
}

}  // namespace silverlab::lang
