#pragma once

// Phrase-break detection over POS-tagged morphemes. Breaks are placed after
// word-final morphemes carrying one of six trigger categories, subject to
// phrase-length limits.

#include <array>
#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kg2p/error.hpp"
#include "kg2p/hangul.hpp"
#include "kg2p/text.hpp"

namespace kg2p {

/// The grammatical categories after which a phrase break may be placed.
inline constexpr std::array<std::string_view, 6> kTriggerCategories{
    "conjunctive_ending", "auxiliary_particle", "case_particle", "other_particle", "adverb", "adnominal_ending"};

struct TaggedMorpheme {
  std::string surface;      // as written in the input
  std::string pos;
  std::size_t word_index = 0;
  SyllableString graphemes;  // filled in after normalization
};

/// Tag set and trigger tags, from config/breaktags.tsv.
class BreakConfig {
public:
  BreakConfig() = default;

  void add(const std::string& category, const std::string& tag) {
    tags_.insert(tag);
    for (auto c : kTriggerCategories)
      if (c == category) triggers_.insert(tag);
    category_of_[tag] = category;
  }

  bool known(const std::string& tag) const { return tags_.count(tag) > 0; }
  bool is_trigger(const std::string& tag) const { return triggers_.count(tag) > 0; }
  const std::set<std::string>& tags() const { return tags_; }
  const std::set<std::string>& triggers() const { return triggers_; }

  /// Same tag set with every trigger demoted to an ordinary tag.
  BreakConfig without_triggers() const {
    BreakConfig c = *this;
    c.triggers_.clear();
    return c;
  }

  // Each line: category TAB comma-separated tags.
  static BreakConfig load(const std::string& path) {
    BreakConfig c;
    read_resource_lines(path, [&](std::string_view line, std::size_t no) {
      auto f = split(line, '\t');
      if (f.size() != 2) throw ResourceError(path, no, "expected: category<TAB>TAG[,TAG...]");
      for (const auto& tag : split(f[1], ',')) {
        auto t = std::string(trim(tag));
        if (t.empty()) throw ResourceError(path, no, "empty tag");
        c.add(f[0], t);
      }
    });
    return c;
  }

private:
  std::set<std::string> tags_;
  std::set<std::string> triggers_;
  std::map<std::string, std::string> category_of_;
};

struct PhraseLimits {
  std::size_t min_words = 3;
  std::size_t max_words = 6;  // kUnbounded disables the forced break
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
};

/// Morpheme indices after which a phrase ends, ascending. The last morpheme
/// of a non-empty sentence is always included.
struct PhraseSegmentation {
  std::vector<std::size_t> break_after;

  bool is_break_after(std::size_t i) const {
    for (auto b : break_after)
      if (b == i) return true;
    return false;
  }
  friend bool operator==(const PhraseSegmentation&, const PhraseSegmentation&) = default;
};

/// Places a break after a word-final morpheme when its tag is a trigger and
/// the phrase already has at least `min_words` words, or unconditionally once
/// the phrase reaches `max_words` words.
inline PhraseSegmentation detect_breaks(const std::vector<TaggedMorpheme>& sentence, const BreakConfig& config,
                                        PhraseLimits limits = {}) {
  if (limits.min_words < 1) throw Error("minimum phrase length must be at least 1");
  if (limits.max_words < limits.min_words) throw Error("maximum phrase length is below the minimum");
  PhraseSegmentation seg;
  std::size_t words = 0;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    const auto& m = sentence[i];
    if (!config.known(m.pos)) throw UnknownTag(m.pos);
    bool last = i + 1 == sentence.size();
    bool word_final = last || sentence[i + 1].word_index != m.word_index;
    if (!word_final) continue;
    ++words;
    if (last || (config.is_trigger(m.pos) && words >= limits.min_words) || words >= limits.max_words) {
      seg.break_after.push_back(i);
      words = 0;
    }
  }
  return seg;
}

}  // namespace kg2p
