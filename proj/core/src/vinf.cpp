#include "silverlab/vinf.hpp"

#include <algorithm>

#include "silverlab/error.hpp"

namespace silverlab {

namespace {

void require_vinf(const PartialAssignment& f) {
  if (f.alphabet().is_bounded()) throw InvalidArgument("expected a condition over the naturals (K=inf)");
  if (!f.is_silver()) throw InvalidArgument("expected infinitely many free coordinates");
}

std::uint64_t next_free(const PartialAssignment& f, std::uint64_t from) {
  const auto a = f.free().next_member(from);
  if (!a) throw CapExceeded("no free coordinate found from " + std::to_string(from));
  return *a;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > ~std::uint64_t{0} - b) throw CapExceeded("value overflow");
  return a + b;
}

/// dom(f) ∩ {n : f(n) = 0}.
Coalition zero_set(const PartialAssignment& f) {
  const auto& tail = f.tail();
  auto zero_bits = [](const Word& w) {
    Word out;
    for (auto v : w) out.push_back(v == 0 ? 1 : 0);
    return out;
  };
  std::set<std::uint64_t> keys, zeros;
  for (const auto& [n, v] : f.fixed()) {
    keys.insert(n);
    if (v == 0) zeros.insert(n);
  }
  const Coalition tail_zero = Coalition::periodic(zero_bits(tail.prefix()), zero_bits(tail.period()));
  return ((tail_zero.minus(f.free())).minus(Coalition::finite(keys)) | Coalition::finite(zeros));
}

}  // namespace

Word e_word(std::uint64_t n) { return Word(n, 0); }

Word h_map(std::uint64_t level, const Word& w) {
  if (w.empty()) throw InvalidArgument("h_map needs a nonempty word");
  Word out(w.begin(), w.end() - 1);
  std::uint64_t zeros = level;
  for (auto v : w) zeros = checked_add(zeros, v);
  if (zeros > (std::uint64_t{1} << 26)) throw CapExceeded("h_map output too long");
  out.resize(out.size() + zeros, 0);
  return out;
}

std::string CnResult::describe() const {
  if (inside) return "inside: generator " + to_string(generator) + ", stem " + to_string(stem);
  return "outside up to bounds (stem <= " + std::to_string(stem_bound) + ", values < " +
         std::to_string(value_bound) + ")";
}

CnResult in_Cn_prefix(const Word& prefix, std::uint64_t n, std::uint64_t stem_bound, std::uint64_t value_bound) {
  if (prefix.size() < stem_bound) throw InvalidArgument("prefix shorter than the stem bound");
  CnResult r;
  r.stem_bound = stem_bound;
  r.value_bound = value_bound;
  if (value_bound == 0) return r;
  // Generator s j: s = x|l is forced, and j = 0 gives the shortest stem
  // x|l 0^(sum s + n); any larger j only adds zeros.
  std::uint64_t sum = 0;
  for (std::uint64_t l = 0; l < stem_bound; ++l) {
    const std::uint64_t len = l + sum + n;
    if (len > stem_bound) break;
    if (std::all_of(prefix.begin() + static_cast<std::ptrdiff_t>(l), prefix.begin() + static_cast<std::ptrdiff_t>(len),
                    [](std::uint64_t v) { return v == 0; })) {
      r.inside = true;
      r.generator.assign(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(l));
      r.generator.push_back(0);
      r.stem = h_map(n, r.generator);
      return r;
    }
    if (prefix[l] >= value_bound) break;
    sum += prefix[l];
  }
  return r;
}

std::uint64_t EscapePoint::at(std::uint64_t n) const {
  if (auto v = f->value(n)) return *v;
  return checked_add(next_free(*f, n + 1), 2);
}

Word EscapePoint::take(std::uint64_t n) const {
  Word out;
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

EscapeResult escape_witness(const PartialAssignment& f, std::uint64_t depth) {
  require_vinf(f);
  const std::uint64_t a0 = next_free(f, 0);
  if (depth < a0 + 1)
    throw InvalidArgument("depth " + std::to_string(depth) + " is too small for one stage; need at least " +
                          std::to_string(a0 + 1));
  const EscapePoint x{&f};
  EscapeResult out;
  out.n = a0 + 2;
  out.prefix = x.take(depth);

  Word t;  // grows to t_{m+1}
  std::uint64_t a = a0;
  for (std::uint64_t m = 0; a < depth; ++m) {
    const std::uint64_t next = next_free(f, a + 1);
    while (t.size() < next) t.push_back(x.at(t.size()));
    EscapeStage st{m, a, x.at(a), next, true};
    // N_t meets N_{h_n(s j)} only if s = t|l and t is zero on
    // [l, min(|t|, l + sum s + n)); generators of length < a_m have l < a_m.
    std::uint64_t sum = 0;
    for (std::uint64_t l = 0; l + 1 < a; ++l) {
      const std::uint64_t end = std::min<std::uint64_t>(t.size(), l + sum + out.n);
      bool zeros = true;
      for (std::uint64_t i = l; i < end && zeros; ++i) zeros = t[i] == 0;
      if (zeros) {
        st.disjoint = false;
        break;
      }
      sum = checked_add(sum, t[l]);
    }
    if (!st.disjoint)
      throw VerificationFailure("escape stage " + std::to_string(m) + " meets E_" + std::to_string(a));
    out.stages.push_back(st);
    a = next;
  }
  return out;
}

PartialAssignment oplus(const PartialAssignment& f, const Word& t) {
  if (!f.is_silver()) throw InvalidArgument("oplus needs infinitely many free coordinates");
  std::map<std::uint64_t, std::uint64_t> values;
  std::uint64_t a = 0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    a = next_free(f, j == 0 ? 0 : a + 1);
    values[a] = t[j];
  }
  return values.empty() ? f : f.extend(values);
}

PartialAssignment g_map(std::uint64_t n, const PartialAssignment& f, std::uint64_t j) {
  require_vinf(f);
  const std::uint64_t a0 = next_free(f, 0);
  std::uint64_t zeros = checked_add(j, n);
  for (std::uint64_t i = 0; i < a0; ++i) zeros = checked_add(zeros, *f.value(i));
  if (zeros > (std::uint64_t{1} << 20)) throw CapExceeded("G_n zero block too long");
  return oplus(f, e_word(zeros));
}

InWitness witness_in_F(const PartialAssignment& f, std::uint64_t levels) {
  require_vinf(f);
  InWitness out{f.complete(0), levels, 0};
  for (std::uint64_t n = 0; n < levels; ++n) {
    const auto g = g_map(n, f, 0);
    // Every coordinate g fixes beyond f lies below the first free one left.
    const std::uint64_t depth = next_free(g, 0) + 1;
    out.depth = std::max(out.depth, depth);
    const auto m = cylinder_member(out.x, Cylinder(g), depth);
    if (!m.agrees) throw VerificationFailure("witness_in_F: x leaves the G_" + std::to_string(n) + " cylinder");
  }
  return out;
}

OutWitness witness_out_F(const PartialAssignment& f, std::uint64_t levels, std::uint64_t depth) {
  require_vinf(f);
  OutWitness out;
  out.depth = depth;
  const std::uint64_t a0 = next_free(f, 0);
  if (depth < a0 + 1)
    throw InvalidArgument("depth " + std::to_string(depth) + " is too small for one stage; need at least " +
                          std::to_string(a0 + 1));
  out.base_n = a0 + 2;
  const Coalition zeros = zero_set(f);
  if (zeros.is_infinite()) {
    out.reason = "f fixes infinitely many coordinates to 0, so every point of N_f lies in F";
    return out;
  }
  const std::uint64_t count = zeros.count_upto(std::uint64_t{1} << 40);
  std::uint64_t from = 0;
  while (out.zeros.size() < count) {
    const auto z = zeros.next_member(from);
    if (!z) throw CapExceeded("zero set of f extends past the scan cap");
    out.zeros.push_back(*z);
    from = *z + 1;
  }
  const EscapePoint y{&f};
  // Smallest n with no hit: one more than the largest (#zeros from p) - sum(y|p).
  std::uint64_t need = 0, sum = 0, at = 0;
  for (std::size_t i = 0; i < out.zeros.size(); ++i) {
    for (; at < out.zeros[i]; ++at) sum = checked_add(sum, y.at(at));
    const std::uint64_t tail = out.zeros.size() - i;
    if (tail >= sum) need = std::max(need, tail - sum + 1);
  }
  out.n = std::max(out.base_n, need);
  out.base_n_suffices = !fn_hit(y, out.zeros, out.base_n);
  if (fn_hit(y, out.zeros, out.n)) throw VerificationFailure("witness_out_F: y lies in F_" + std::to_string(out.n));
  for (std::uint64_t k = 0; k < levels; ++k) out.in_level.push_back(fn_hit(y, out.zeros, k).has_value());
  out.horizon = out.zeros.empty() ? 0 : out.zeros.back() + 1;
  out.prefix = y.take(depth);
  out.exists = true;
  return out;
}

std::uint64_t default_value_bound(const PartialAssignment& f, std::uint64_t depth) {
  std::uint64_t m = depth;
  for (std::uint64_t i = 0; i < depth; ++i)
    if (auto v = f.value(i)) m = std::max(m, *v);
  return m + 2;
}

}  // namespace silverlab
