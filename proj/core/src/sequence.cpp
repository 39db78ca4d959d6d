#include "silverlab/sequence.hpp"

#include <numeric>

#include "silverlab/error.hpp"

namespace silverlab {

std::string to_string(const Word& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(w[i]);
  }
  return out + "]";
}

bool is_prefix(const Word& prefix, const Word& w) {
  return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

Alphabet Alphabet::bounded(std::uint64_t size) {
  if (size < 2) throw InvalidArgument("alphabet size must be at least 2");
  Alphabet a;
  a.size_ = size;
  return a;
}

std::uint64_t Alphabet::size() const {
  if (!size_) throw InvalidArgument("alphabet is unbounded");
  return *size_;
}

std::string Alphabet::to_string() const { return size_ ? std::to_string(*size_) : "inf"; }

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  const std::uint64_t g = std::gcd(a, b);
  const std::uint64_t q = a / g;
  if (q != 0 && b > cap / q) {
    throw InvalidArgument("joint period lcm(" + std::to_string(a) + "," + std::to_string(b) +
                          ") exceeds cap " + std::to_string(cap));
  }
  return q * b;
}

EventuallyPeriodicSeq::EventuallyPeriodicSeq(Alphabet alphabet, Word prefix, Word period)
    : alphabet_(alphabet), prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw InvalidArgument("period must be nonempty");
  for (const Word* w : {&prefix_, &period_}) {
    for (auto v : *w) {
      if (!alphabet_.admits(v)) {
        throw InvalidArgument("value " + std::to_string(v) + " outside alphabet " +
                              alphabet_.to_string());
      }
    }
  }
}

EventuallyPeriodicSeq EventuallyPeriodicSeq::constant(Alphabet alphabet, std::uint64_t value) {
  return EventuallyPeriodicSeq(alphabet, {}, {value});
}

EventuallyPeriodicSeq EventuallyPeriodicSeq::bits(const std::string& prefix,
                                                  const std::string& period) {
  auto parse = [](const std::string& s) {
    Word w;
    for (char c : s) {
      if (c != '0' && c != '1') throw InvalidArgument("expected a 0/1 string, got \"" + s + "\"");
      w.push_back(static_cast<std::uint64_t>(c - '0'));
    }
    return w;
  };
  return EventuallyPeriodicSeq(Alphabet::bounded(2), parse(prefix), parse(period));
}

std::uint64_t EventuallyPeriodicSeq::at(std::uint64_t n) const {
  if (n < prefix_.size()) return prefix_[n];
  return period_[(n - prefix_.size()) % period_.size()];
}

Word EventuallyPeriodicSeq::take(std::uint64_t n) const {
  Word out(n);
  for (std::uint64_t i = 0; i < n; ++i) out[i] = at(i);
  return out;
}

EventuallyPeriodicSeq EventuallyPeriodicSeq::canonical() const {
  const std::size_t p = period_.size();
  std::size_t best = p;
  for (std::size_t d = 1; d < p; ++d) {
    if (p % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < p && ok; ++i) ok = period_[i] == period_[i - d];
    if (ok) {
      best = d;
      break;
    }
  }
  Word prefix = prefix_;
  Word period(period_.begin(), period_.begin() + static_cast<std::ptrdiff_t>(best));
  while (!prefix.empty() && prefix.back() == period.back()) {
    prefix.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  return EventuallyPeriodicSeq(alphabet_, std::move(prefix), std::move(period));
}

EventuallyPeriodicSeq EventuallyPeriodicSeq::with_value(std::uint64_t n, std::uint64_t value) const {
  Word prefix = take(std::max<std::uint64_t>(n + 1, prefix_.size()));
  Word period = period_;
  // Re-anchor the period so that it still starts right after the prefix.
  const std::uint64_t shift = (prefix.size() - prefix_.size()) % period_.size();
  std::rotate(period.begin(), period.begin() + static_cast<std::ptrdiff_t>(shift), period.end());
  prefix[n] = value;
  return EventuallyPeriodicSeq(alphabet_, std::move(prefix), std::move(period)).canonical();
}

std::uint64_t EventuallyPeriodicSeq::joint_window(const EventuallyPeriodicSeq& other,
                                                  std::uint64_t max_period) const {
  const std::uint64_t period = checked_lcm(period_.size(), other.period_.size(), max_period);
  return std::max(prefix_.size(), other.prefix_.size()) + period;
}

bool operator==(const EventuallyPeriodicSeq& a, const EventuallyPeriodicSeq& b) {
  if (!(a.alphabet_ == b.alphabet_)) return false;
  const auto ca = a.canonical();
  const auto cb = b.canonical();
  return ca.prefix_ == cb.prefix_ && ca.period_ == cb.period_;
}

}  // namespace silverlab
