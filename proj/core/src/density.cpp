#include "silverlab/density.hpp"

#include "silverlab/error.hpp"

namespace silverlab {

Rational alpha(const Coalition& a, std::uint64_t n) {
  if (n < 1) throw InvalidArgument("alpha needs n >= 1");
  return Rational(static_cast<std::int64_t>(a.count_upto(n)), static_cast<std::int64_t>(n));
}

DensityProfile density_bounds(const Coalition& a, const std::vector<std::uint64_t>& horizons) {
  if (horizons.empty()) throw InvalidArgument("need at least one horizon");
  for (std::size_t i = 1; i < horizons.size(); ++i)
    if (horizons[i] <= horizons[i - 1]) throw InvalidArgument("horizons must be strictly increasing");
  DensityProfile p;
  for (auto n : horizons) p.samples.emplace_back(n, alpha(a, n));
  p.window_begin = p.samples.size() / 2;
  p.upper = p.lower = p.samples[p.window_begin].second;
  for (std::size_t i = p.window_begin; i < p.samples.size(); ++i) {
    p.upper = std::max(p.upper, p.samples[i].second);
    p.lower = std::min(p.lower, p.samples[i].second);
  }
  try {
    p.exact = a.density();
  } catch (const CapExceeded&) {
    p.exact.reset();
  }
  return p;
}

std::vector<std::uint64_t> find_triples(const Coalition& a, std::uint64_t horizon) {
  if (horizon < 3) throw InvalidArgument("triple horizon must be at least 3");
  std::vector<std::uint64_t> out;
  std::uint64_t run = 0;
  for (std::uint64_t n = 0; n <= horizon; ++n) {
    run = a.contains(n) ? run + 1 : 0;
    if (run >= 3) out.push_back(n - 2);
  }
  return out;
}

}  // namespace silverlab
