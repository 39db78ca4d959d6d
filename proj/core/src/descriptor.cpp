#include "silverlab/descriptor.hpp"

#include <map>
#include <numeric>

#include "silverlab/error.hpp"

namespace silverlab {

struct Coalition::Node {
  Kind kind;
  std::set<std::uint64_t> elements;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  Word prefix;
  Word period;
  std::optional<Coalition> lhs;
  std::optional<Coalition> rhs;
};

namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::uint64_t kGeomLimit = std::uint64_t{1} << 40;
constexpr std::uint64_t kBaseLengthCap = std::uint64_t{1} << 24;
constexpr std::uint64_t kCycleCap = std::uint64_t{1} << 22;
// Symbolic geometric points c*r^n are examined from this exponent on, far
// beyond any pre-period of the residue sequences involved.
constexpr std::uint64_t kFarExponent = std::uint64_t{1} << 20;

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(x) * y % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

const std::map<std::uint64_t, std::int64_t>& factor(std::uint64_t x) {
  thread_local std::map<std::uint64_t, std::map<std::uint64_t, std::int64_t>> cache;
  auto [it, fresh] = cache.try_emplace(x);
  if (!fresh) return it->second;
  auto& out = it->second;
  for (std::uint64_t p = 2; p * p <= x; ++p) {
    while (x % p == 0) {
      ++out[p];
      x /= p;
    }
  }
  if (x > 1) ++out[x];
  return out;
}

std::int64_t val(const std::map<std::uint64_t, std::int64_t>& f, std::uint64_t p) {
  auto it = f.find(p);
  return it == f.end() ? 0 : it->second;
}

// The point c * r^n with n large, known only through residues and exponents.
struct FarPoint {
  std::uint64_t c;
  std::uint64_t r;
  std::uint64_t n;

  std::uint64_t mod(std::uint64_t m) const { return mulmod(c % m, powmod(r, n, m), m); }
};

bool geom_contains_far(std::uint64_t c2, std::uint64_t r2, const FarPoint& x) {
  // c * r^n = c2 * r2^m for some m >= 0, decided prime by prime.
  const auto &fc = factor(x.c), &fr = factor(x.r), &fc2 = factor(c2), &fr2 = factor(r2);
  std::set<std::uint64_t> primes;
  for (const auto* f : {&fc, &fr, &fc2, &fr2})
    for (const auto& [p, e] : *f) primes.insert(p);
  const auto n = static_cast<std::int64_t>(x.n);
  std::optional<std::int64_t> m;
  const std::uint64_t q = fr2.begin()->first;
  const std::int64_t num = val(fc, q) + n * val(fr, q) - val(fc2, q);
  if (num < 0 || num % val(fr2, q) != 0) return false;
  m = num / val(fr2, q);
  for (auto p : primes) {
    if (val(fc, p) + n * val(fr, p) != val(fc2, p) + *m * val(fr2, p)) return false;
  }
  return true;
}

std::uint64_t residue_cycle(std::uint64_t c, std::uint64_t r, std::uint64_t m) {
  if (m <= 1) return 1;
  const std::uint64_t start = FarPoint{c, r, kFarExponent}.mod(m);
  std::uint64_t u = mulmod(start, r, m);
  std::uint64_t len = 1;
  while (u != start) {
    u = mulmod(u, r, m);
    if (++len > kCycleCap) throw CapExceeded("residue cycle of geometric family too long");
  }
  return len;
}

Word bits_of(const std::string& s) {
  Word w;
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw InvalidArgument("periodic word must be over 0/1: \"" + s + "\"");
    w.push_back(static_cast<std::uint64_t>(ch - '0'));
  }
  return w;
}

std::string bit_string(const Word& w) {
  std::string s;
  for (auto v : w) s += static_cast<char>('0' + v);
  return s;
}

}  // namespace

std::string format_set(const std::set<std::uint64_t>& s) {
  std::string out;
  auto it = s.begin();
  while (it != s.end()) {
    auto run_end = it;
    std::uint64_t len = 1;
    for (auto nx = std::next(it); nx != s.end() && *nx == *run_end + 1; ++nx) {
      run_end = nx;
      ++len;
    }
    if (!out.empty()) out += ",";
    if (len >= 3) {
      out += std::to_string(*it) + ".." + std::to_string(*run_end);
      it = std::next(run_end);
    } else {
      out += std::to_string(*it);
      ++it;
    }
  }
  return out;
}

Coalition Coalition::finite(std::set<std::uint64_t> members) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Finite;
  n->elements = std::move(members);
  return Coalition(n);
}

Coalition Coalition::arith(std::uint64_t start, std::uint64_t step) {
  if (step == 0) throw InvalidArgument("arith step must be at least 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Arith;
  n->a = start;
  n->b = step;
  return Coalition(n);
}

Coalition Coalition::geom(std::uint64_t c, std::uint64_t r) {
  if (c < 1 || r < 2) throw InvalidArgument("geom needs c >= 1 and r >= 2");
  if (c > kGeomLimit || r > kGeomLimit) throw InvalidArgument("geom parameters limited to 2^40");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Geom;
  n->a = c;
  n->b = r;
  return Coalition(n);
}

Coalition Coalition::periodic(Word prefix, Word period) {
  if (period.empty()) throw InvalidArgument("periodic word needs a nonempty period");
  for (const Word* w : {&prefix, &period})
    for (auto v : *w)
      if (v > 1) throw InvalidArgument("periodic word must be over 0/1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Periodic;
  n->prefix = std::move(prefix);
  n->period = std::move(period);
  return Coalition(n);
}

Coalition Coalition::periodic(const std::string& prefix, const std::string& period) {
  return periodic(bits_of(prefix), bits_of(period));
}

Coalition Coalition::operator~() const {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Complement;
  n->lhs = *this;
  return Coalition(n);
}

Coalition operator|(const Coalition& a, const Coalition& b) {
  auto n = std::make_shared<Coalition::Node>();
  n->kind = Coalition::Kind::Union;
  n->lhs = a;
  n->rhs = b;
  return Coalition(n);
}

Coalition operator&(const Coalition& a, const Coalition& b) {
  auto n = std::make_shared<Coalition::Node>();
  n->kind = Coalition::Kind::Intersection;
  n->lhs = a;
  n->rhs = b;
  return Coalition(n);
}

Coalition::Kind Coalition::kind() const { return node_->kind; }
const std::set<std::uint64_t>& Coalition::elements() const { return node_->elements; }
std::uint64_t Coalition::first() const { return node_->a; }
std::uint64_t Coalition::second() const { return node_->b; }
const Word& Coalition::prefix() const { return node_->prefix; }
const Word& Coalition::period() const { return node_->period; }
const Coalition& Coalition::lhs() const { return *node_->lhs; }
const Coalition& Coalition::rhs() const { return *node_->rhs; }

bool Coalition::contains(std::uint64_t x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Finite:
      return n.elements.count(x) > 0;
    case Kind::Arith:
      return x >= n.a && (x - n.a) % n.b == 0;
    case Kind::Geom: {
      if (x < n.a || x % n.a) return false;
      std::uint64_t q = x / n.a;
      while (q % n.b == 0) q /= n.b;
      return q == 1;
    }
    case Kind::Periodic:
      if (x < n.prefix.size()) return n.prefix[x] == 1;
      return n.period[(x - n.prefix.size()) % n.period.size()] == 1;
    case Kind::Complement:
      return !n.lhs->contains(x);
    case Kind::Union:
      return n.lhs->contains(x) || n.rhs->contains(x);
    case Kind::Intersection:
      return n.lhs->contains(x) && n.rhs->contains(x);
  }
  return false;
}

bool Coalition::has_geom() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Geom:
      return true;
    case Kind::Complement:
      return n.lhs->has_geom();
    case Kind::Union:
    case Kind::Intersection:
      return n.lhs->has_geom() || n.rhs->has_geom();
    default:
      return false;
  }
}

EventuallyPeriodicSeq Coalition::base() const {
  const Node& n = *node_;
  const Alphabet two = Alphabet::bounded(2);
  switch (n.kind) {
    case Kind::Finite: {
      if (n.elements.empty()) return EventuallyPeriodicSeq(two, {}, {0});
      const std::uint64_t top = *n.elements.rbegin();
      if (top >= kBaseLengthCap) throw CapExceeded("finite set element too large for exact analysis");
      Word w(top + 1, 0);
      for (auto e : n.elements) w[e] = 1;
      return EventuallyPeriodicSeq(two, std::move(w), {0});
    }
    case Kind::Arith: {
      if (n.a >= kBaseLengthCap || n.b >= kBaseLengthCap)
        throw CapExceeded("arith parameters too large for exact analysis");
      Word period(n.b, 0);
      period[0] = 1;
      return EventuallyPeriodicSeq(two, Word(n.a, 0), std::move(period));
    }
    case Kind::Geom:
      return EventuallyPeriodicSeq(two, {}, {0});
    case Kind::Periodic:
      return EventuallyPeriodicSeq(two, n.prefix, n.period);
    case Kind::Complement: {
      const auto inner = n.lhs->base();
      return EventuallyPeriodicSeq::zip(inner, inner, two,
                                        [](std::uint64_t u, std::uint64_t) { return 1 - u; });
    }
    case Kind::Union:
      return EventuallyPeriodicSeq::zip(n.lhs->base(), n.rhs->base(), two,
                                        [](std::uint64_t u, std::uint64_t v) { return u | v; });
    case Kind::Intersection:
      return EventuallyPeriodicSeq::zip(n.lhs->base(), n.rhs->base(), two,
                                        [](std::uint64_t u, std::uint64_t v) { return u & v; });
  }
  throw InvalidArgument("unknown descriptor kind");
}

Rational Coalition::density() const {
  const auto b = base();
  std::int64_t ones = 0;
  for (auto v : b.period()) ones += static_cast<std::int64_t>(v);
  return Rational(ones, static_cast<std::int64_t>(b.period().size()));
}

namespace {

void collect_geoms(const Coalition& s, std::set<std::pair<std::uint64_t, std::uint64_t>>& out) {
  switch (s.kind()) {
    case Coalition::Kind::Geom:
      out.emplace(s.first(), s.second());
      break;
    case Coalition::Kind::Complement:
      collect_geoms(s.lhs(), out);
      break;
    case Coalition::Kind::Union:
    case Coalition::Kind::Intersection:
      collect_geoms(s.lhs(), out);
      collect_geoms(s.rhs(), out);
      break;
    default:
      break;
  }
}

bool contains_far(const Coalition& s, const FarPoint& x) {
  switch (s.kind()) {
    case Coalition::Kind::Finite:
      return false;
    case Coalition::Kind::Arith:
      return x.mod(s.second()) == s.first() % s.second();
    case Coalition::Kind::Geom:
      return geom_contains_far(s.first(), s.second(), x);
    case Coalition::Kind::Periodic: {
      const std::uint64_t p = s.period().size();
      const std::uint64_t off = s.prefix().size() % p;
      return s.period()[(x.mod(p) + p - off) % p] == 1;
    }
    case Coalition::Kind::Complement:
      return !contains_far(s.lhs(), x);
    case Coalition::Kind::Union:
      return contains_far(s.lhs(), x) || contains_far(s.rhs(), x);
    case Coalition::Kind::Intersection:
      return contains_far(s.lhs(), x) && contains_far(s.rhs(), x);
  }
  return false;
}

// Period (in n) of the membership pattern of c*r^n, n >= kFarExponent.
std::uint64_t far_cycle(const Coalition& s, std::uint64_t c, std::uint64_t r) {
  switch (s.kind()) {
    case Coalition::Kind::Arith:
      return residue_cycle(c, r, s.second());
    case Coalition::Kind::Periodic:
      return residue_cycle(c, r, s.period().size());
    case Coalition::Kind::Geom: {
      const auto &fr = factor(r), &fr2 = factor(s.second());
      std::uint64_t out = 1;
      for (const auto& [p, e2] : fr2) {
        const auto g = std::gcd(val(fr, p), e2);
        out = checked_lcm(out, static_cast<std::uint64_t>(e2 / (g ? g : 1)), kCycleCap);
      }
      return out;
    }
    case Coalition::Kind::Complement:
      return far_cycle(s.lhs(), c, r);
    case Coalition::Kind::Union:
    case Coalition::Kind::Intersection:
      return checked_lcm(far_cycle(s.lhs(), c, r), far_cycle(s.rhs(), c, r), kCycleCap);
    default:
      return 1;
  }
}

}  // namespace

bool Coalition::is_finite() const {
  const auto b = base();
  for (auto v : b.period())
    if (v) return false;
  std::set<std::pair<std::uint64_t, std::uint64_t>> geoms;
  collect_geoms(*this, geoms);
  for (const auto& [c, r] : geoms) {
    const std::uint64_t q = far_cycle(*this, c, r);
    for (std::uint64_t i = 0; i < q; ++i) {
      if (contains_far(*this, FarPoint{c, r, kFarExponent + i})) return false;
    }
  }
  return true;
}

std::uint64_t Coalition::count_upto(std::uint64_t n) const {
  const auto b = base();
  const std::uint64_t pre = b.prefix().size();
  const std::uint64_t p = b.period().size();
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < pre && i <= n; ++i) count += b.prefix()[i];
  if (n >= pre) {
    const std::uint64_t span = n - pre + 1;
    std::uint64_t ones = 0;
    for (auto v : b.period()) ones += v;
    count += (span / p) * ones;
    for (std::uint64_t i = 0; i < span % p; ++i) count += b.period()[i];
  }
  std::set<std::pair<std::uint64_t, std::uint64_t>> geoms;
  collect_geoms(*this, geoms);
  std::set<std::uint64_t> points;
  for (const auto& [c, r] : geoms) {
    for (u128 x = c; x <= n; x *= r) points.insert(static_cast<std::uint64_t>(x));
  }
  std::int64_t correction = 0;
  for (auto x : points) correction += int{contains(x)} - static_cast<int>(b.at(x));
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(count) + correction);
}

std::optional<std::uint64_t> Coalition::next_member(std::uint64_t from, std::uint64_t scan_cap) const {
  for (std::uint64_t i = 0; i < scan_cap; ++i) {
    if (contains(from + i)) return from + i;
  }
  return std::nullopt;
}

std::vector<std::uint64_t> Coalition::members_below(std::uint64_t n) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < n; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::vector<std::uint64_t> Coalition::first_members(std::size_t count, std::uint64_t scan_cap) const {
  std::vector<std::uint64_t> out;
  std::uint64_t x = 0;
  while (out.size() < count) {
    auto m = next_member(x, scan_cap);
    if (!m) throw CapExceeded("no member found within scan cap after " + std::to_string(x));
    out.push_back(*m);
    x = *m + 1;
  }
  return out;
}

Coalition Coalition::normalize() const {
  if (!has_geom()) {
    const auto b = base().canonical();
    const Word& pre = b.prefix();
    const Word& per = b.period();
    const auto ones = static_cast<std::size_t>(std::count(per.begin(), per.end(), 1));
    if (ones == 0 || ones == per.size()) {
      const std::uint64_t want = ones == 0 ? 1 : 0;
      std::set<std::uint64_t> s;
      for (std::size_t i = 0; i < pre.size(); ++i)
        if (pre[i] == want) s.insert(i);
      return ones == 0 ? finite(std::move(s)) : ~finite(std::move(s));
    }
    if (ones == 1 && std::count(pre.begin(), pre.end(), 1) == 0) {
      const auto pos = static_cast<std::uint64_t>(std::find(per.begin(), per.end(), 1) - per.begin());
      return arith(pre.size() + pos, per.size());
    }
    return periodic(pre, per);
  }
  switch (kind()) {
    case Kind::Complement: {
      const Coalition inner = lhs().normalize();
      if (inner.kind() == Kind::Complement) return inner.lhs();
      return ~inner;
    }
    case Kind::Union:
      return lhs().normalize() | rhs().normalize();
    case Kind::Intersection:
      return lhs().normalize() & rhs().normalize();
    default:
      return *this;
  }
}

namespace {

std::string dsl(const Coalition& s, int ctx) {
  using K = Coalition::Kind;
  switch (s.kind()) {
    case K::Finite:
      return "finite{" + format_set(s.elements()) + "}";
    case K::Arith:
      return "arith(" + std::to_string(s.first()) + "," + std::to_string(s.second()) + ")";
    case K::Geom:
      return "geom(" + std::to_string(s.first()) + "," + std::to_string(s.second()) + ")";
    case K::Periodic:
      if (s.prefix().empty()) return "periodic(\"" + bit_string(s.period()) + "\")";
      return "periodic(\"" + bit_string(s.prefix()) + "\",\"" + bit_string(s.period()) + "\")";
    case K::Complement:
      return "~" + dsl(s.lhs(), 3);
    case K::Union: {
      std::string t = dsl(s.lhs(), 1) + "|" + dsl(s.rhs(), 2);
      return ctx > 1 ? "(" + t + ")" : t;
    }
    case K::Intersection: {
      std::string t = dsl(s.lhs(), 2) + "&" + dsl(s.rhs(), 3);
      return ctx > 2 ? "(" + t + ")" : t;
    }
  }
  return {};
}

}  // namespace

std::string Coalition::to_dsl() const { return dsl(*this, 0); }

bool operator==(const Coalition& a, const Coalition& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Coalition::Kind::Finite:
      return x.elements == y.elements;
    case Coalition::Kind::Arith:
    case Coalition::Kind::Geom:
      return x.a == y.a && x.b == y.b;
    case Coalition::Kind::Periodic:
      return x.prefix == y.prefix && x.period == y.period;
    case Coalition::Kind::Complement:
      return *x.lhs == *y.lhs;
    default:
      return *x.lhs == *y.lhs && *x.rhs == *y.rhs;
  }
}

}  // namespace silverlab
