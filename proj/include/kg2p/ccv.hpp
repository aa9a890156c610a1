#pragma once

// Consonant-consonant-vowel (CCV) rules: the final of one syllable, the
// initial of the next and that syllable's vowel decide how the two
// consonants are pronounced. Rules only touch morpheme-internal syllable
// boundaries and never change a vowel.

#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kg2p/error.hpp"
#include "kg2p/hangul.hpp"
#include "kg2p/text.hpp"

namespace kg2p {

struct CcvContext {
  std::optional<Jamo> final_c;  // grapheme final of the left syllable
  Jamo initial_c;               // grapheme initial of the right syllable
  Jamo vowel;                   // vowel of the right syllable

  friend bool operator==(const CcvContext&, const CcvContext&) = default;
  friend auto operator<=>(const CcvContext&, const CcvContext&) = default;
};

struct CcvOutput {
  std::optional<Jamo> final_c;
  Jamo initial_c;

  friend bool operator==(const CcvOutput&, const CcvOutput&) = default;
  friend auto operator<=>(const CcvOutput&, const CcvOutput&) = default;
};

struct CcvRule {
  CcvContext context;
  CcvOutput output;

  friend bool operator==(const CcvRule&, const CcvRule&) = default;
};

inline CcvContext context_at(const SyllableString& s, std::size_t boundary) {
  return {s[boundary].final, s[boundary + 1].initial, s[boundary + 1].vowel};
}

inline CcvOutput identity_output(const CcvContext& c) { return {c.final_c, c.initial_c}; }

namespace detail {

inline std::string opt_token(const std::optional<Jamo>& j) { return j ? rule_token(*j) : "-"; }

inline std::optional<Jamo> parse_final_token(std::string_view t) {
  if (t == "-") return std::nullopt;
  auto j = lookup_token(JamoClass::Final, t);
  if (!j) throw UnknownToken(0, std::string(t));
  return *j;
}

inline Jamo parse_initial_token(std::string_view t) {
  auto j = lookup_token(JamoClass::Initial, t == "_" ? std::string_view{} : t);
  if (!j) throw UnknownToken(0, std::string(t));
  return *j;
}

}  // namespace detail

inline std::string format_rule(const CcvRule& r) {
  return detail::opt_token(r.context.final_c) + ' ' + rule_token(r.context.initial_c) + ' ' +
         rule_token(r.context.vowel) + '\t' + detail::opt_token(r.output.final_c) + ' ' +
         rule_token(r.output.initial_c);
}

/// A set of CCV rules, at most one per context.
class CcvRuleSet {
public:
  /// Adds a rule; a second rule for the same context is rejected.
  bool add(const CcvRule& r) {
    if (!by_context_.emplace(r.context, rules_.size()).second) return false;
    rules_.push_back(r);
    return true;
  }

  std::optional<std::size_t> find(const CcvContext& c) const {
    auto it = by_context_.find(c);
    if (it == by_context_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<CcvRule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }

  // Line format: "final initial vowel<TAB>final initial", '-' for no final
  // and '_' for the silent initial, e.g. "g r yo\tng n".
  static CcvRuleSet load(const std::string& path) {
    CcvRuleSet set;
    read_resource_lines(path, [&](std::string_view line, std::size_t no) {
      auto halves = split(line, '\t');
      if (halves.size() != 2) throw ResourceError(path, no, "expected: final initial vowel<TAB>final initial");
      auto lhs = split_ws(halves[0]), rhs = split_ws(halves[1]);
      if (lhs.size() != 3 || rhs.size() != 2) throw ResourceError(path, no, "expected 3 context tokens and 2 output tokens");
      CcvRule r;
      try {
        r.context.final_c = detail::parse_final_token(lhs[0]);
        r.context.initial_c = detail::parse_initial_token(lhs[1]);
        auto v = lookup_token(JamoClass::Vowel, lhs[2]);
        if (!v) throw UnknownToken(0, lhs[2]);
        r.context.vowel = *v;
        r.output.final_c = detail::parse_final_token(rhs[0]);
        r.output.initial_c = detail::parse_initial_token(rhs[1]);
      } catch (const UnknownToken& e) {
        throw ResourceError(path, no, e.what());
      }
      if (!set.add(r)) throw ResourceError(path, no, "duplicate context");
    });
    return set;
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ResourceError(path, 0, "cannot write file");
    out << kFormatHeader << "\n# final initial vowel\tfinal initial\n";
    for (const auto& r : rules_) out << format_rule(r) << '\n';
  }

private:
  std::vector<CcvRule> rules_;
  std::map<CcvContext, std::size_t> by_context_;
};

/// Positions a caller has already fixed; indexed by syllable.
struct CcvLocks {
  std::vector<bool> initial;
  std::vector<bool> final_c;

  bool initial_locked(std::size_t i) const { return i < initial.size() && initial[i]; }
  bool final_locked(std::size_t i) const { return i < final_c.size() && final_c[i]; }
};

/// Applies the rules to every internal syllable boundary in one simultaneous
/// pass: contexts are read from the input graphemes, never from rewritten
/// output. A boundary with a locked side is left untouched. Indices of fired
/// rules are appended to `fired`.
inline SyllableString apply_ccv(const SyllableString& graphemes, const CcvRuleSet& rules, const CcvLocks& locks = {},
                                std::vector<std::size_t>* fired = nullptr) {
  SyllableString out = graphemes;
  for (std::size_t b = 0; b + 1 < graphemes.size(); ++b) {
    if (locks.final_locked(b) || locks.initial_locked(b + 1)) continue;
    auto id = rules.find(context_at(graphemes, b));
    if (!id) continue;
    const auto& o = rules.rules()[*id].output;
    out[b].final = o.final_c;
    out[b + 1].initial = o.initial_c;
    if (fired) fired->push_back(*id);
  }
  return out;
}

/// A grapheme/phoneme pair of one transcribed unit (a morpheme or a word).
struct AlignedPair {
  SyllableString graphemes;
  SyllableString phonemes;
};

/// Parses one training line: graphemes TAB phonemes, each side a
/// space-separated list of units (Hangul or romanized). Units are paired in
/// order and must agree in count.
inline std::vector<AlignedPair> parse_training_line(std::string_view line) {
  auto halves = split(line, '\t');
  if (halves.size() != 2) throw Error("expected graphemes<TAB>phonemes");
  auto g = split_ws(halves[0]), p = split_ws(halves[1]);
  if (g.size() != p.size()) throw Error("unit counts differ between graphemes and phonemes");
  std::vector<AlignedPair> out;
  for (std::size_t i = 0; i < g.size(); ++i) out.push_back({parse_surface(g[i]), deromanize(p[i])});
  return out;
}

struct CcvObservation {
  CcvContext context;
  CcvOutput output;
  std::size_t sentence = 0;
  std::size_t boundary = 0;
};

/// Syllable-level alignment: both sides are already syllabified, so
/// alignment is possible exactly when the vowel sequences agree. Returns the
/// boundary observations, or nullopt if the pair cannot be aligned.
inline std::optional<std::vector<CcvObservation>> observe(const AlignedPair& p, std::size_t sentence = 0) {
  if (vowels_of(p.graphemes) != vowels_of(p.phonemes)) return std::nullopt;
  std::vector<CcvObservation> out;
  for (std::size_t b = 0; b + 1 < p.graphemes.size(); ++b)
    out.push_back({context_at(p.graphemes, b), {p.phonemes[b].final, p.phonemes[b + 1].initial}, sentence, b});
  return out;
}

struct CcvLearnResult {
  CcvRuleSet rules;
  std::vector<std::size_t> misaligned;  // corpus indices that could not be aligned
  std::size_t observations = 0;
};

/// Learns one rule per context: the majority output, when it differs from
/// the identity and was seen at least `min_count` times. Ties go to the
/// identity, then to the smallest output. Rules come out ordered by context.
inline CcvLearnResult learn_ccv(const std::vector<AlignedPair>& corpus, std::size_t min_count = 1) {
  CcvLearnResult res;
  std::map<CcvContext, std::map<CcvOutput, std::size_t>> counts;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto obs = observe(corpus[i], i);
    if (!obs) {
      res.misaligned.push_back(i);
      continue;
    }
    for (const auto& o : *obs) ++counts[o.context][o.output];
    res.observations += obs->size();
  }
  for (const auto& [ctx, outs] : counts) {
    auto id = identity_output(ctx);
    auto best = outs.begin();
    for (auto it = outs.begin(); it != outs.end(); ++it) {
      if (it->second > best->second) best = it;
      else if (it->second == best->second && it->first == id && best->first != id) best = it;
    }
    if (best->first == id || best->second < min_count) continue;
    res.rules.add({ctx, best->first});
  }
  return res;
}

struct CcvException {
  std::size_t sentence;
  std::size_t boundary;
  CcvContext context;
  CcvOutput predicted;
  CcvOutput observed;
};

struct CcvCoverage {
  struct Stats {
    std::size_t seen = 0;
    std::size_t agree = 0;
  };
  std::map<CcvContext, Stats> per_context;
  std::vector<CcvException> exceptions;
  std::size_t boundaries = 0;
  std::size_t agreeing = 0;

  double accuracy() const { return boundaries ? static_cast<double>(agreeing) / static_cast<double>(boundaries) : 1.0; }
};

/// Compares rule predictions (identity where no rule applies) with the corpus.
inline CcvCoverage coverage_report(const CcvRuleSet& rules, const std::vector<AlignedPair>& corpus) {
  CcvCoverage cov;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto obs = observe(corpus[i], i);
    if (!obs) continue;
    for (const auto& o : *obs) {
      auto id = rules.find(o.context);
      auto predicted = id ? rules.rules()[*id].output : identity_output(o.context);
      auto& st = cov.per_context[o.context];
      ++st.seen;
      ++cov.boundaries;
      if (predicted == o.output) {
        ++st.agree;
        ++cov.agreeing;
      } else {
        cov.exceptions.push_back({o.sentence, o.boundary, o.context, predicted, o.output});
      }
    }
  }
  return cov;
}

/// Reads a training corpus file (graphemes TAB phonemes per line).
inline std::vector<AlignedPair> load_training_corpus(const std::string& path) {
  std::vector<AlignedPair> out;
  read_resource_lines(path, [&](std::string_view line, std::size_t no) {
    try {
      for (auto& p : parse_training_line(line)) out.push_back(std::move(p));
    } catch (const Error& e) {
      throw ResourceError(path, no, e.what());
    }
  });
  return out;
}

}  // namespace kg2p
