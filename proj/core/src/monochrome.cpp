#include "silverlab/monochrome.hpp"

#include <algorithm>

#include "silverlab/error.hpp"

namespace silverlab {

namespace {

/// Advances `digits` as a base-k counter, last digit fastest. False on wrap.
bool next_digits(Word& digits, std::uint64_t k) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < k) return true;
    digits[i] = 0;
  }
  return false;
}

struct Stage {
  const ChoiceFunction& F;
  std::vector<std::uint64_t> support;
  Word base;                          // F's support values, free slots filled later
  std::vector<std::size_t> free_pos;  // indexes into support that are free
  std::uint64_t k;
  std::uint64_t cap;
  std::uint64_t evaluations = 0;

  std::uint64_t eval(const Word& values) {
    if (++evaluations > cap) throw CapExceeded("cap exceeded: monochromatize needs more than " + std::to_string(cap) + " evaluations");
    return F.eval_on_support(values);
  }

  /// With the first j free slots set to `prefix`, does every completion land
  /// on one side? Returns 1 for `part`, 0 for the rest, -1 for neither.
  int side(const Word& prefix, const std::set<std::uint64_t>& part) {
    Word values = base;
    for (std::size_t i = 0; i < prefix.size(); ++i) values[free_pos[i]] = prefix[i];
    Word rest(free_pos.size() - prefix.size(), 0);
    int seen = -2;
    do {
      for (std::size_t i = 0; i < rest.size(); ++i) values[free_pos[prefix.size() + i]] = rest[i];
      const int s = part.count(eval(values)) ? 1 : 0;
      if (seen == -2) seen = s;
      if (seen != s) return -1;
    } while (next_digits(rest, k));
    return seen;
  }
};

}  // namespace

MonochromeResult monochromatize(const ChoiceFunction& F, const Cylinder& c,
                                const std::vector<std::set<std::uint64_t>>& partitions, const SearchOptions& opts) {
  const PartialAssignment& f0 = c.assignment();
  if (!(f0.alphabet() == F.alphabet())) throw InvalidArgument("cylinder and choice function use different alphabets");
  if (!f0.is_silver()) throw InvalidArgument("monochromatize needs a Silver cylinder");
  const std::uint64_t k = F.k();

  MonochromeResult out{f0, 0, {}};
  std::set<std::uint64_t> block;
  for (std::uint64_t v = 0; v < k; ++v) block.insert(v);

  for (std::size_t stage_no = 0; block.size() > 1; ++stage_no) {
    std::set<std::uint64_t> part;
    if (stage_no < partitions.size()) {
      part = partitions[stage_no];
      for (auto v : part)
        if (!block.count(v)) throw InvalidArgument("partition " + std::to_string(stage_no) + " leaves the current block");
      if (part.empty() || part.size() == block.size())
        throw InvalidArgument("partition " + std::to_string(stage_no) + " does not split the current block");
    } else {
      auto it = block.begin();
      for (std::size_t i = 0; i < (block.size() + 1) / 2; ++i) part.insert(*it++);
    }

    Stage st{F, F.support(), {}, {}, k, opts.max_evaluations};
    for (std::size_t i = 0; i < st.support.size(); ++i) {
      const auto v = out.sub.value(st.support[i]);
      st.base.push_back(v ? *v : 0);
      if (!v) st.free_pos.push_back(i);
    }

    std::optional<std::pair<Word, int>> found;
    for (std::size_t j = 0; j <= st.free_pos.size() && !found; ++j) {
      Word prefix(j, 0);
      do {
        const int s = st.side(prefix, part);
        if (s >= 0) {
          found = {prefix, s};
          break;
        }
      } while (next_digits(prefix, k));
    }
    if (!found) throw VerificationFailure("monochromatize found no side; F is not determined by its support");

    MonochromeStage rec;
    rec.block = block;
    rec.part = part;
    for (std::size_t i = 0; i < found->first.size(); ++i) rec.fixed[st.support[st.free_pos[i]]] = found->first[i];
    std::set<std::uint64_t> kept;
    for (auto v : block)
      if ((part.count(v) ? 1 : 0) == found->second) kept.insert(v);
    rec.kept = kept;
    rec.evaluations = st.evaluations;
    if (!rec.fixed.empty()) out.sub = out.sub.extend(rec.fixed);
    out.stages.push_back(std::move(rec));
    block = std::move(kept);
  }
  out.value = *block.begin();
  return out;
}

}  // namespace silverlab
