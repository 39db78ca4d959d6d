#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "silverlab/assignment.hpp"
#include "silverlab/sequence.hpp"

namespace silverlab {

/// 0^n.
Word e_word(std::uint64_t n);

/// h_level(s j) = s e_{s(0)} ... e_{s(|s|-1)} e_j, followed by e_level when
/// level > 0. Throws InvalidArgument on the empty word.
Word h_map(std::uint64_t level, const Word& w);

struct CnResult {
  bool inside = false;
  Word generator;  // s j with x in N_{h_n(s j)}, when inside
  Word stem;       // h_n(s j)
  std::uint64_t stem_bound = 0;
  std::uint64_t value_bound = 0;

  std::string describe() const;
};

/// Is x in C_n = union of N_{h_n(w)}? Only generators w with entries below
/// value_bound and |h_n(w)| <= stem_bound are considered, so "outside" means
/// outside up to those bounds. `prefix` must cover stem_bound coordinates.
CnResult in_Cn_prefix(const Word& prefix, std::uint64_t n, std::uint64_t stem_bound, std::uint64_t value_bound);

template <Point X>
CnResult in_Cn(const X& x, std::uint64_t n, std::uint64_t stem_bound, std::uint64_t value_bound) {
  Word prefix;
  for (std::uint64_t i = 0; i < stem_bound; ++i) prefix.push_back(x.at(i));
  return in_Cn_prefix(prefix, n, stem_bound, value_bound);
}

/// The point built by the escape recursion: f on dom(f), and a_{m+1} + 2 on
/// the free coordinate a_m.
struct EscapePoint {
  const PartialAssignment* f;
  std::uint64_t at(std::uint64_t n) const;
  Alphabet alphabet() const { return f->alphabet(); }
  Word take(std::uint64_t n) const;
};

struct EscapeStage {
  std::uint64_t m = 0;
  std::uint64_t a_m = 0;
  std::uint64_t jump = 0;   // x(a_m)
  std::uint64_t t_len = 0;  // |t_{m+1}| = a_{m+1}
  bool disjoint = false;    // N_{t_{m+1}} misses every N_{h_n(w)} with |w| < a_m
};

struct EscapeResult {
  Word prefix;
  std::uint64_t n = 0;
  std::vector<EscapeStage> stages;
};

/// Runs the recursion t_0 = stem, n = a_0 + 2, and jumps a_{m+1} + 2 at the
/// free coordinate a_m, up to `depth`. Each stage is checked exactly (the
/// word part of a generator is forced by t_{m+1} and j = 0 is the weakest
/// choice); a failed stage throws VerificationFailure. Needs an N-valued
/// Silver f and depth > a_0.
EscapeResult escape_witness(const PartialAssignment& f, std::uint64_t depth);

/// f with t(j) on its j-th free coordinate, for j < |t|.
PartialAssignment oplus(const PartialAssignment& f, const Word& t);

/// G_n(f with j at a_0) = f ⊕ e_{f(0)} ⊕ ... ⊕ e_{f(a_0 - 1)} ⊕ e_j ⊕ e_n,
/// which zero-fills the first sum(f(i), i < a_0) + j + n free coordinates.
PartialAssignment g_map(std::uint64_t n, const PartialAssignment& f, std::uint64_t j);

struct InWitness {
  EventuallyPeriodicSeq x;
  std::uint64_t levels = 0;
  std::uint64_t depth = 0;  // cylinder checks ran to this depth
};

/// x = f with 0 on every free coordinate; checks x in [G_n(f with 0 at a_0)]
/// for n < levels. Throws VerificationFailure if a check fails.
InWitness witness_in_F(const PartialAssignment& f, std::uint64_t levels);

/// y lies in F_n iff for some p with y(p) = 0, y has at least
/// sum(y(i), i < p) + n zeros in [p, inf). `zeros` lists every zero of y.
/// Returns the p, if any.
template <Point X>
std::optional<std::uint64_t> fn_hit(const X& y, const std::vector<std::uint64_t>& zeros, std::uint64_t n) {
  std::uint64_t sum = 0, at = 0;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    for (; at < zeros[i]; ++at) sum += y.at(at);
    if (zeros.size() - i >= sum + n) return zeros[i];
  }
  return std::nullopt;
}

struct OutWitness {
  bool exists = false;
  std::string reason;               // when !exists
  Word prefix;                      // y up to depth
  std::uint64_t n = 0;
  std::uint64_t base_n = 0;        // a_0 + 2
  bool base_n_suffices = false;
  std::vector<std::uint64_t> zeros; // every zero of y
  std::uint64_t horizon = 0;        // the refutation only reads y below this
  std::vector<bool> in_level;       // y in F_k, for k < levels
  std::uint64_t depth = 0;
};

/// y from the escape recursion, with n large enough that y is not in F_n.
/// When f fixes infinitely many coordinates to 0 every point of N_f lies in
/// F and no witness exists; the result says so.
OutWitness witness_out_F(const PartialAssignment& f, std::uint64_t levels, std::uint64_t depth);

/// max(depth, values fixed by f below depth) + 2.
std::uint64_t default_value_bound(const PartialAssignment& f, std::uint64_t depth);

}  // namespace silverlab
