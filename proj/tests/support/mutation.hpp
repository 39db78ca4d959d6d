#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "silverlab/speclang.hpp"

namespace silverlab::testing {

struct CorpusFile {
  std::string name;
  std::string text;
};

/// Every .svl file under `dir`, sorted by name.
inline std::vector<CorpusFile> load_corpus(const std::string& dir) {
  std::vector<CorpusFile> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() != ".svl") continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out.push_back({e.path().filename().string(), ss.str()});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

/// 1-based line and column of byte `offset`.
inline lang::Loc loc_of(const std::string& text, std::size_t offset) {
  lang::Loc l;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++l.line;
      l.column = 1;
    } else {
      ++l.column;
    }
  }
  return l;
}

inline bool loc_le(const lang::Loc& a, const lang::Loc& b) {
  return a.line < b.line || (a.line == b.line && a.column <= b.column);
}

struct MutationOutcome {
  std::string file;
  std::string token;
  lang::Loc removed;   // where the deleted token started
  lang::Loc next;      // first token after the deletion, in the mutated text
  lang::Loc reported;  // parse error position
  bool parsed = false;
};

struct MutationStats {
  std::uint64_t trials = 0;
  std::uint64_t parsed = 0;          // mutation still valid: no error to locate
  std::uint64_t at_or_before = 0;    // reported <= next token after the deletion
  std::uint64_t same_line_after = 0; // same line as the deletion, not before it
  std::vector<MutationOutcome> late; // reported past the next token
};

/// Deletes one random token per trial from a random corpus file and parses
/// the result.
inline MutationStats mutation_trials(const std::vector<CorpusFile>& corpus, std::uint64_t trials,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MutationStats s;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto& file = corpus[std::uniform_int_distribution<std::size_t>(0, corpus.size() - 1)(rng)];
    const auto spans = lang::token_spans(file.text);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, spans.size() - 1)(rng);
    const auto [off, len] = spans[k];
    const std::string mutated = file.text.substr(0, off) + file.text.substr(off + len);
    MutationOutcome o;
    o.file = file.name;
    o.token = file.text.substr(off, len);
    o.removed = loc_of(mutated, off);
    o.next = loc_of(mutated, k + 1 < spans.size() ? spans[k + 1].first - len : mutated.size());
    ++s.trials;
    try {
      lang::parse(mutated);
      o.parsed = true;
      ++s.parsed;
      continue;
    } catch (const lang::ParseError& e) {
      o.reported = e.loc;
    }
    if (loc_le(o.reported, o.next))
      ++s.at_or_before;
    else
      s.late.push_back(o);
    if (o.reported.line == o.removed.line && loc_le(o.removed, o.reported)) ++s.same_line_after;
  }
  return s;
}

}  // namespace silverlab::testing
