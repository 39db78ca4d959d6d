#include <random>

#include "silverlab/density.hpp"
#include "silverlab/scenario.hpp"

namespace silverlab {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(g_); }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  std::string bits(std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += below(2) ? '1' : '0';
    return s;
  }

 private:
  std::mt19937_64 g_;
};

Coalition random_atom(Rng& rng) {
  switch (rng.below(3)) {
    case 0:
      return Coalition::arith(rng.below(20), rng.between(1, 7));
    case 1:
      return Coalition::periodic(rng.bits(rng.below(5)), rng.bits(rng.between(1, 8)));
    default: {
      std::set<std::uint64_t> s;
      for (std::uint64_t i = 0, n = rng.below(12); i < n; ++i) s.insert(rng.below(60));
      return Coalition::finite(s);
    }
  }
}

Coalition random_coalition(Rng& rng) {
  Coalition a = random_atom(rng);
  switch (rng.below(4)) {
    case 0:
      return a | random_atom(rng);
    case 1:
      return a & random_atom(rng);
    case 2:
      return ~a;
    default:
      return a;
  }
}

void density_sweep(Report& r, Rng& rng, std::uint64_t count) {
  r.csv_header = {"item", "coalition", "n", "alpha", "count"};
  std::uint64_t agree = 0, total = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const Coalition a = random_coalition(rng);
    const std::uint64_t n = rng.between(1, 10000);
    std::uint64_t c = 0;
    for (std::uint64_t m = 0; m <= n; ++m) c += a.contains(m) ? 1 : 0;
    const Rational q = alpha(a, n);
    const bool ok = q == Rational(static_cast<std::int64_t>(c), static_cast<std::int64_t>(n));
    agree += ok ? 1 : 0;
    ++total;
    if (!ok) r.fail("alpha mismatch on " + a.to_dsl() + " at n = " + std::to_string(n));
    r.csv_rows.push_back({std::to_string(i), a.to_dsl(), std::to_string(n), format_rational(q), std::to_string(c)});
  }
  r.line("alpha matches the membership count on " + std::to_string(agree) + "/" + std::to_string(total) + " samples");
}

ChoiceFunction random_choice(Rng& rng, std::uint64_t k) {
  std::set<std::uint64_t> s;
  for (std::uint64_t i = 0, n = rng.between(1, 6); i < n; ++i) s.insert(rng.below(10));
  const std::vector<std::uint64_t> support(s.begin(), s.end());
  switch (rng.below(4)) {
    case 0:
      return ChoiceFunction::dictator(support[rng.below(support.size())], k);
    case 1:
      return k == 2 ? ChoiceFunction::parity(support) : ChoiceFunction::majority(support, rng.below(k), k);
    case 2:
      return ChoiceFunction::majority(support, rng.below(k), k);
    default: {
      std::uint64_t size = 1;
      for (std::size_t i = 0; i < support.size(); ++i) size *= k;
      Word t(size);
      for (auto& v : t) v = rng.below(k);
      return ChoiceFunction::table(k, support, t);
    }
  }
}

/// Enumerates the free support coordinates directly.
bool naive_irrelevant(const ChoiceFunction& F, const PartialAssignment& f) {
  std::vector<std::uint64_t> free;
  for (auto s : F.support())
    if (f.is_free(s)) free.push_back(s);
  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < free.size(); ++i) combos *= F.k();
  std::optional<std::uint64_t> first;
  for (std::uint64_t code = 0; code < combos; ++code) {
    Word v;
    std::uint64_t c = code;
    std::size_t fi = 0;
    for (auto s : F.support()) {
      if (fi < free.size() && free[fi] == s) {
        v.push_back(c % F.k());
        c /= F.k();
        ++fi;
      } else {
        v.push_back(*f.value(s));
      }
    }
    const auto y = F.eval_on_support(v);
    if (first && *first != y) return false;
    first = y;
  }
  return true;
}

void irrelevance_sweep(Report& r, Rng& rng, std::uint64_t count) {
  r.csv_header = {"item", "F", "b", "verdict", "naive"};
  std::uint64_t agree = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t k = rng.between(2, 3);
    const Alphabet alpha = Alphabet::bounded(k);
    const ChoiceFunction F = random_choice(rng, k);
    std::set<std::uint64_t> fin;
    std::map<std::uint64_t, std::uint64_t> fixed;
    for (std::uint64_t s = 0; s < 10; ++s) {
      if (rng.below(2))
        fin.insert(s);
      else
        fixed[s] = rng.below(k);
    }
    const Coalition b = Coalition::finite(fin) | Coalition::arith(10, 1);
    const PartialAssignment f(alpha, b, fixed, EventuallyPeriodicSeq::constant(alpha, 0));
    const auto res = is_irrelevant(F, b, f);
    const bool naive = naive_irrelevant(F, f);
    bool ok = res.irrelevant() == naive;
    if (ok && !naive) {
      const auto& [x, y] = *res.witness;
      ok = F.eval(x) != F.eval(y) && cylinder_member(x, Cylinder(f), 11).agrees &&
           cylinder_member(y, Cylinder(f), 11).agrees;
    }
    agree += ok ? 1 : 0;
    if (!ok) r.fail("irrelevance mismatch on " + F.to_dsl() + " with b = " + b.to_dsl());
    r.csv_rows.push_back({std::to_string(i), F.to_dsl(), b.to_dsl(), res.irrelevant() ? "irrelevant" : "relevant",
                          naive ? "irrelevant" : "relevant"});
  }
  r.line("is_irrelevant agrees with exhaustive enumeration on " + std::to_string(agree) + "/" +
         std::to_string(count) + " queries");
}

/// Binary condition whose free set is periodic with ones-fraction >= 3/4.
PartialAssignment random_dense(Rng& rng) {
  const Alphabet two = Alphabet::bounded(2);
  const std::uint64_t period = rng.between(4, 12);
  std::string per(period, '1');
  const std::uint64_t zeros = rng.below(period / 4 + 1);
  for (std::uint64_t z = 0; z < zeros; ++z) per[rng.below(period)] = '0';
  per[0] = '1';
  const Coalition free = Coalition::periodic(rng.bits(rng.below(6)), per);
  std::map<std::uint64_t, std::uint64_t> fixed;
  for (std::uint64_t n = 0; n < 40; ++n)
    if (!free.contains(n)) fixed[n] = rng.below(2);
  return PartialAssignment(two, free, fixed, EventuallyPeriodicSeq::bits("", rng.bits(rng.between(1, 4))));
}

void swr_sweep(Report& r, Rng& rng, std::uint64_t count) {
  r.csv_header = {"item", "case", "variant", "derivations", "valid"};
  std::uint64_t valid = 0, total = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto f = random_dense(rng);
    for (Case c : {Case::EPrecO, Case::OPrecE, Case::Equiv}) {
      for (Variant v : {Variant::SeFa, Variant::PFa}) {
        ++total;
        std::string failure;
        std::size_t derivations = 0;
        try {
          const auto b = case_witness(f, Rational(3, 4), c, v);
          derivations = b.derivations.size();
          const auto chk = check_bundle(b);
          if (!chk.valid) failure = chk.failure;
        } catch (const Error& e) {
          failure = e.what();
        }
        if (failure.empty())
          ++valid;
        else
          r.fail("bundle " + std::to_string(i) + " " + to_string(c) + "/" + to_string(v) + ": " + failure);
        r.csv_rows.push_back({std::to_string(i), to_string(c), to_string(v), std::to_string(derivations),
                              failure.empty() ? "yes" : "no"});
      }
    }
  }
  r.line("case bundles passing every derivation check: " + std::to_string(valid) + "/" + std::to_string(total));
}

}  // namespace

Report sweep(const std::string& kind, std::uint64_t count, std::uint64_t seed) {
  Report r;
  r.title = "sweep " + kind;
  r.fields["seed"] = std::to_string(seed);
  r.fields["count"] = std::to_string(count);
  Rng rng(seed);
  if (kind == "density")
    density_sweep(r, rng, count);
  else if (kind == "irrelevance")
    irrelevance_sweep(r, rng, count);
  else if (kind == "swr")
    swr_sweep(r, rng, count);
  else
    throw InvalidArgument("unknown sweep '" + kind + "' (density, irrelevance, swr)");
  return r;
}

}  // namespace silverlab
