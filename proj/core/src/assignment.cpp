#include "silverlab/assignment.hpp"

namespace silverlab {

PartialAssignment::PartialAssignment(Alphabet alphabet, Coalition free,
                                     std::map<std::uint64_t, std::uint64_t> fixed,
                                     EventuallyPeriodicSeq tail)
    : alphabet_(alphabet), free_(std::move(free)), fixed_(std::move(fixed)), tail_(std::move(tail)) {
  if (!(tail_.alphabet() == alphabet_))
    throw InvalidArgument("tail alphabet " + tail_.alphabet().to_string() + " differs from " +
                          alphabet_.to_string());
  for (const auto& [n, v] : fixed_) {
    if (free_.contains(n))
      throw InvalidArgument("coordinate " + std::to_string(n) + " is both free and fixed");
    if (!alphabet_.admits(v))
      throw InvalidArgument("value " + std::to_string(v) + " at coordinate " + std::to_string(n) +
                            " outside alphabet " + alphabet_.to_string());
  }
  silver_ = free_.is_infinite();
}

PartialAssignment PartialAssignment::empty(Alphabet alphabet) {
  return PartialAssignment(alphabet, Coalition::all(), {}, EventuallyPeriodicSeq::constant(alphabet, 0));
}

PartialAssignment PartialAssignment::only(Alphabet alphabet,
                                          std::map<std::uint64_t, std::uint64_t> fixed) {
  std::set<std::uint64_t> keys;
  for (const auto& kv : fixed) keys.insert(kv.first);
  return PartialAssignment(alphabet, ~Coalition::finite(std::move(keys)), std::move(fixed),
                           EventuallyPeriodicSeq::constant(alphabet, 0));
}

std::optional<std::uint64_t> PartialAssignment::value(std::uint64_t n) const {
  if (free_.contains(n)) return std::nullopt;
  auto it = fixed_.find(n);
  if (it != fixed_.end()) return it->second;
  return tail_.at(n);
}

Word PartialAssignment::stem(std::uint64_t scan_cap) const {
  const auto a0 = free_.next_member(0, scan_cap);
  if (!a0) throw CapExceeded("no free coordinate within scan cap");
  Word out;
  for (std::uint64_t n = 0; n < *a0; ++n) out.push_back(*value(n));
  return out;
}

PartialAssignment PartialAssignment::extend(const std::map<std::uint64_t, std::uint64_t>& values) const {
  if (values.empty()) return *this;
  std::set<std::uint64_t> keys;
  auto fixed = fixed_;
  for (const auto& [n, v] : values) {
    if (!free_.contains(n))
      throw InvalidArgument("coordinate " + std::to_string(n) + " is already fixed");
    keys.insert(n);
    fixed[n] = v;
  }
  Coalition free = free_.minus(Coalition::finite(std::move(keys)));
  if (!free.has_geom()) free = free.normalize();
  return PartialAssignment(alphabet_, std::move(free), std::move(fixed), tail_);
}

EventuallyPeriodicSeq PartialAssignment::complete(
    std::uint64_t fill, const std::map<std::uint64_t, std::uint64_t>& overrides) const {
  if (free_.has_geom())
    throw InvalidArgument("completion needs a free set without geometric atoms");
  if (!alphabet_.admits(fill)) throw InvalidArgument("fill value outside alphabet");
  auto x = EventuallyPeriodicSeq::zip(free_.base(), tail_, alphabet_,
                                      [fill](std::uint64_t is_free, std::uint64_t t) {
                                        return is_free ? fill : t;
                                      });
  for (const auto& [n, v] : fixed_) x = x.with_value(n, v);
  for (const auto& [n, v] : overrides) {
    if (!free_.contains(n))
      throw InvalidArgument("override at fixed coordinate " + std::to_string(n));
    if (!alphabet_.admits(v)) throw InvalidArgument("override value outside alphabet");
    x = x.with_value(n, v);
  }
  return x;
}

namespace {

std::string list(const Word& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + "]";
}

std::string digits(const Word& w) {
  std::string s;
  for (auto v : w) s += static_cast<char>('0' + v);
  return s;
}

}  // namespace

std::string tail_dsl(const EventuallyPeriodicSeq& tail) {
  bool small = true;
  for (const Word* w : {&tail.prefix(), &tail.period()})
    for (auto v : *w) small = small && v <= 9;
  if (!small) return "values(" + list(tail.prefix()) + "," + list(tail.period()) + ")";
  if (tail.prefix().empty()) return "periodic(\"" + digits(tail.period()) + "\")";
  return "periodic(\"" + digits(tail.prefix()) + "\",\"" + digits(tail.period()) + "\")";
}

std::string PartialAssignment::to_dsl() const {
  std::string s = "assign(K=" + alphabet_.to_string() + ", free=" + free_.to_dsl();
  if (!fixed_.empty()) {
    s += ", fix{";
    bool first = true;
    for (const auto& [n, v] : fixed_) {
      s += (first ? "" : ",") + std::to_string(n) + ":" + std::to_string(v);
      first = false;
    }
    s += "}";
  }
  return s + ", tail=" + tail_dsl(tail_) + ")";
}

bool operator==(const PartialAssignment& a, const PartialAssignment& b) {
  return a.alphabet_ == b.alphabet_ && a.free_ == b.free_ && a.fixed_ == b.fixed_ &&
         a.tail_.prefix() == b.tail_.prefix() && a.tail_.period() == b.tail_.period();
}

}  // namespace silverlab
