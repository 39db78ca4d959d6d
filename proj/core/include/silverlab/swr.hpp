#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "silverlab/assignment.hpp"
#include "silverlab/descriptor.hpp"
#include "silverlab/rational.hpp"
#include "silverlab/sequence.hpp"

namespace silverlab {

/// A stream over totally ordered utility levels. Level i is printed as
/// levels[i]; the order is the order of indices.
struct UtilityStream {
  std::string levels;
  EventuallyPeriodicSeq seq;

  UtilityStream(std::string levels, EventuallyPeriodicSeq seq);
  /// Reads prefix and period as level characters, e.g. ("abcd", "ad", "bc").
  static UtilityStream parse(const std::string& levels, const std::string& prefix, const std::string& period);

  std::uint64_t at(std::uint64_t n) const { return seq.at(n); }
  Alphabet alphabet() const { return seq.alphabet(); }
  char label(std::uint64_t n) const { return levels[at(n)]; }
  /// Canonical prefix and period as level characters.
  std::pair<std::string, std::string> spelled() const;
  std::string to_string() const;  // "ad(bcad)"

  friend bool operator==(const UtilityStream& a, const UtilityStream& b) {
    return a.levels == b.levels && a.seq == b.seq;
  }
};

/// Finite-support bijection of N, identity off its support.
class FinitePermutation {
 public:
  FinitePermutation() = default;
  /// Throws InvalidArgument unless `map` is a bijection of its key set.
  explicit FinitePermutation(std::map<std::uint64_t, std::uint64_t> map);
  /// Product of disjoint transpositions.
  static FinitePermutation swaps(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs);
  /// Cycle notation "(0 4)(1 5)", as printed by to_string. "()" is the identity.
  static FinitePermutation parse(const std::string& text);

  std::uint64_t operator()(std::uint64_t n) const;
  const std::map<std::uint64_t, std::uint64_t>& map() const { return map_; }
  std::string to_string() const;

  friend bool operator==(const FinitePermutation&, const FinitePermutation&) = default;

 private:
  std::map<std::uint64_t, std::uint64_t> map_;  // fixed points dropped
};

/// f_pi(x)(n) = x(pi(n)).
UtilityStream permute(const FinitePermutation& pi, const UtilityStream& x);

/// Copy of x with the given coordinates overwritten.
EventuallyPeriodicSeq patch(const EventuallyPeriodicSeq& x, const std::map<std::uint64_t, std::uint64_t>& values);

enum class Relation { Equiv, Strict };
std::string relation_symbol(Relation r);  // "~" or "<"
std::string relation_pretty(Relation r);  // "∼" or "≺"

enum class StepKind { FA, SE, P };

struct DerivationStep {
  StepKind kind = StepKind::P;
  FinitePermutation pi;       // FA
  std::uint64_t i = 0, j = 0; // SE
  UtilityStream source;
  UtilityStream target;
  Relation relation = Relation::Strict;

  static DerivationStep fa(FinitePermutation pi, UtilityStream source);
  static DerivationStep se(std::uint64_t i, std::uint64_t j, UtilityStream source, UtilityStream target);
  static DerivationStep p(UtilityStream source, UtilityStream target);

  std::string describe() const;  // "FA perm=(0 4)", "SE i=2 j=3", "P"
};

struct StepCheck {
  bool valid = false;
  std::string reason;
  std::optional<std::uint64_t> coordinate;
};

/// Exact validation. FA needs target = f_pi(source) and relation ∼; SE needs
/// the pattern x(i) < y(i) < y(j) < x(j) with agreement elsewhere; P needs
/// source < target pointwise with a strict coordinate. Streams whose joint
/// period is too long to scan are rejected as an alignment failure.
StepCheck check_step(const DerivationStep& s);

struct Derivation {
  std::vector<DerivationStep> steps;
};

struct DerivationCheck {
  bool valid = false;
  std::size_t step = 0;  // failing step, when !valid
  std::string reason;
  Relation conclusion = Relation::Equiv;
};

/// Every step valid, each source equal to the previous target. The conclusion
/// is ≺ iff some step is ≺.
DerivationCheck check_derivation(const Derivation& d);

struct Decomposition {
  bool paired = false;
  std::vector<std::uint64_t> n;  // U(x), as far as computed
  Coalition initial = Coalition::none();      // [0, n_0), or [0, 2 n_0) when paired
  Coalition even_blocks = Coalition::none();  // E(x)
  Coalition odd_blocks = Coalition::none();   // O(x)

  /// I_k, half-open.
  std::pair<std::uint64_t, std::uint64_t> block(std::size_t k) const;
};

/// Blocks of a binary stream with infinitely many 1s: I_k = [n_k, n_{k+1}),
/// or [2 n_k, 2 n_{k+1}) when paired. `count` bounds the listed n_k.
Decomposition decompose(const EventuallyPeriodicSeq& x, bool paired, std::size_t count = 64);

enum class Variant { SeFa, PFa };
enum class Case { EPrecO, OPrecE, Equiv };

std::string to_string(Variant v);  // "sefa", "pfa"
std::string to_string(Case c);     // "eo", "oe", "sim"

struct OEPair {
  UtilityStream o;
  UtilityStream e;
};

/// o(x) and e(x). SE+FA: levels abcd, paired blocks, a/d on the initial
/// block and on O(x) (resp. E(x)), b/c on E(x) (resp. O(x)), split by the
/// parity of the coordinate. P+FA: levels 01, unit blocks, o(x) = 1 on E(x)
/// and e(x) = 1 on O(x).
OEPair oe_maps(const EventuallyPeriodicSeq& x, Variant v);

struct ClaimedDerivation {
  std::string name;    // "o(z) -> e(x)"
  std::string source;  // "o(z)"
  std::string target;  // "e(x)"
  Derivation d;
};

struct CaseOptions {
  std::uint64_t horizon = 10000;      // triples are searched below this
  std::optional<std::uint64_t> l;     // index of the dropped n_l, default: first admissible in w_0
};

struct WitnessBundle {
  Case which = Case::Equiv;
  Variant variant = Variant::SeFa;
  PartialAssignment f;
  EventuallyPeriodicSeq x;
  EventuallyPeriodicSeq moved;               // y (case ∼) or z
  std::string moved_name;                    // "y" or "z"
  std::optional<std::uint64_t> l;            // index of the single drop
  std::vector<std::uint64_t> pair_indices;   // j with n_j, n_j + 1 dropped
  std::vector<std::uint64_t> dropped;        // coordinates set to 0
  std::uint64_t block_size = 0;              // |E(l)| or |O(l)|
  FinitePermutation pi;
  std::vector<ClaimedDerivation> derivations;
  std::vector<std::string> chain;            // stream names, left to right
  std::vector<Relation> links;               // links[i] between chain[i] and chain[i+1]
  std::vector<bool> hypothesis;              // links[i] is the case assumption
  std::string verdict;                       // "x in F, z not in F"
  std::uint64_t horizon = 0;
};

/// The three-case construction over a δ-dense Silver condition f on {0,1},
/// δ > 2/3. Case ∼: y drops one pair n_j, n_j + 1 with j odd taken from a
/// triple. Cases ≺: y drops n_l from the first triple, then z also drops J
/// later pairs from triples, J the least with 2J > |E(l)| + 2 (SE+FA) or
/// J > |E(l)| (P+FA); O(l) replaces E(l) for o ≺ e. Derivations are built
/// from the streams and are not checked here; see check_bundle.
/// Throws CapExceeded when the horizon holds too few triples.
WitnessBundle case_witness(const PartialAssignment& f, const Rational& delta, Case which, Variant v,
                           const CaseOptions& opts = {});

struct BundleCheck {
  bool valid = false;
  std::string failure;  // derivation name, step and reason
  std::vector<DerivationCheck> results;
};

/// Re-derives o/e of x and of the moved point, and checks: each derivation
/// connects the streams it names, passes check_derivation, and concludes ≺;
/// the moved point lies in N_f up to the horizon.
BundleCheck check_bundle(const WitnessBundle& b);

struct Certificate {
  std::string levels;
  struct Entry {
    std::string name;
    Relation claim = Relation::Strict;
    Derivation d;
  };
  std::vector<Entry> entries;
};

/// Line format:
///   cert v1
///   levels abcd
///   derivation <name> claim=<
///   stream s0 prefix="ad" period="bc"
///   FA perm=(0 4)(1 5) s0 s1 ~
///   SE i=4 j=5 s1 s2 <
///   end
std::string write_certificate(const Certificate& c);
/// Throws InvalidArgument naming the offending line.
Certificate read_certificate(const std::string& text);
Certificate certificate_of(const WitnessBundle& b);

}  // namespace silverlab
