#pragma once

// End-to-end conversion of a POS-tagged sentence into a phonemic string:
// normalization, phrase breaks, candidate generation, lattice selection and
// rendering. Plus corpus evaluation and batch conversion.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "kg2p/ccv.hpp"
#include "kg2p/error.hpp"
#include "kg2p/hangul.hpp"
#include "kg2p/lattice.hpp"
#include "kg2p/lexicon.hpp"
#include "kg2p/normalize.hpp"
#include "kg2p/phrasebreak.hpp"
#include "kg2p/text.hpp"

namespace kg2p {

/// Every resource the converter needs, loaded once and shared read-only.
struct Resources {
  BreakConfig breaks;
  ReadingTables readings;
  PhoneticDictionary dictionary;
  PatternDictionary patterns;
  CcvRuleSet ccv;
  ConnectivityTable connectivity;

  /// Loads from a data directory. The break-tag file defaults to
  /// `<data>/breaktags.tsv`, then `<data>/../config/breaktags.tsv`.
  static Resources load(const std::filesystem::path& data_dir, std::filesystem::path breaktags = {}) {
    namespace fs = std::filesystem;
    if (breaktags.empty()) {
      breaktags = data_dir / "breaktags.tsv";
      if (!fs::exists(breaktags)) breaktags = data_dir / ".." / "config" / "breaktags.tsv";
    }
    Resources r;
    r.breaks = BreakConfig::load(breaktags.string());
    r.readings = ReadingTables::load((data_dir / "readings.tsv").string());
    r.dictionary = PhoneticDictionary::load((data_dir / "phonetic.dict").string());
    r.patterns = PatternDictionary::load((data_dir / "phonetic_pattern.dict").string());
    r.ccv = CcvRuleSet::load((data_dir / "ccv.rules").string());
    r.connectivity = ConnectivityTable::load((data_dir / "connectivity.tsv").string());
    if (auto rom = data_dir / "romanization.tsv"; fs::exists(rom)) check_romanization_file(rom.string());
    r.validate((data_dir / "phonetic.dict").string(), (data_dir / "phonetic_pattern.dict").string());
    return r;
  }

  /// Cross-file checks: POS tags must be in the tag set and labels without
  /// meta-characters must be in the connectivity inventory.
  void validate(const std::string& dict_path = "phonetic.dict",
                const std::string& pattern_path = "phonetic_pattern.dict") const {
    auto check = [&](const PhoneticEntry& e, const std::string& path) {
      for (const auto& p : e.pos)
        if (!breaks.known(p)) throw ResourceError(path, e.line, "unknown POS tag '" + p + "'");
      auto has_meta = [](const std::string& l) { return l.find_first_of("ZYV") != std::string::npos; };
      if (!has_meta(e.left_conn) && !connectivity.knows_left(e.left_conn))
        throw ResourceError(path, e.line, "left label '" + e.left_conn + "' is not in the connectivity table");
      if (!has_meta(e.right_conn) && !connectivity.knows_right(e.right_conn))
        throw ResourceError(path, e.line, "right label '" + e.right_conn + "' is not in the connectivity table");
    };
    for (const auto& e : dictionary.entries()) check(e.row, dict_path);
    for (const auto& e : patterns.entries()) check(e.row, pattern_path);
  }

  // data/romanization.tsv documents the built-in table; a mismatch is an error.
  static void check_romanization_file(const std::string& path) {
    const auto& rows = romanization_table();
    std::size_t i = 0;
    read_resource_lines(path, [&](std::string_view line, std::size_t no) {
      auto f = split(line, '\t');
      if (f.size() != 3) throw ResourceError(path, no, "expected: kind<TAB>token<TAB>jamo");
      if (i >= rows.size() || rows[i].kind != f[0] || rows[i].token != f[1] || rows[i].jamo != f[2])
        throw ResourceError(path, no, "row differs from the built-in romanization table");
      ++i;
    });
    if (i != rows.size()) throw ResourceError(path, 0, "romanization table is incomplete");
  }
};

enum class CandidateSource { Exact, Pattern, Identity };

inline std::string_view to_string(CandidateSource s) {
  switch (s) {
    case CandidateSource::Exact: return "exact";
    case CandidateSource::Pattern: return "pattern";
    case CandidateSource::Identity: return "identity";
  }
  return "?";
}

struct Candidate {
  SyllableString phonemes;
  std::string left;
  std::string right;
  CandidateSource source = CandidateSource::Identity;
  std::size_t entry = 0;               // dictionary or pattern entry index
  std::vector<std::size_t> ccv_rules;  // rules that fired
};

struct MorphemeResult {
  TaggedMorpheme morpheme;
  std::string original;  // non-Korean surface before normalization, else empty
  std::optional<TokenKind> kind;
  std::vector<Candidate> candidates;
  std::size_t chosen = 0;

  const Candidate& pick() const { return candidates[chosen]; }
};

struct ConversionResult {
  std::vector<MorphemeResult> morphemes;
  PhraseSegmentation segmentation;
  PhonemeLattice lattice;
  std::vector<std::string> diagnostics;

  /// Phrases of words of phonemes.
  std::vector<std::vector<SyllableString>> phrases() const {
    std::vector<std::vector<SyllableString>> out;
    std::vector<SyllableString> phrase;
    for (std::size_t i = 0; i < morphemes.size(); ++i) {
      const auto& m = morphemes[i];
      if (i == 0 || morphemes[i - 1].morpheme.word_index != m.morpheme.word_index || segmentation.is_break_after(i - 1))
        phrase.emplace_back();
      const auto& ph = m.pick().phonemes;
      phrase.back().insert(phrase.back().end(), ph.begin(), ph.end());
      if (segmentation.is_break_after(i)) {
        out.push_back(std::move(phrase));
        phrase.clear();
      }
    }
    return out;
  }
};

struct ConvertOptions {
  PhraseLimits limits;
  bool relax = true;
};

/// Splits "w1/T+w2/T w3/T" into morphemes; '+' joins morphemes of one word.
inline std::vector<TaggedMorpheme> parse_tagged(std::string_view sentence) {
  std::vector<TaggedMorpheme> out;
  auto words = split_ws(sentence);
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (const auto& tok : split(words[w], '+')) {
      auto slash = tok.rfind('/');
      if (slash == std::string::npos || slash == 0 || slash + 1 == tok.size())
        throw Error("malformed token '" + tok + "', expected surface/TAG");
      out.push_back({tok.substr(0, slash), tok.substr(slash + 1), w, {}});
    }
  }
  return out;
}

namespace detail {

inline bool foreign_tag(const std::string& pos) { return pos == "SL" || pos == "SN" || pos == "SW" || pos == "SH"; }
inline bool punctuation_tag(const std::string& pos) {
  return pos == "SF" || pos == "SP" || pos == "SS" || pos == "SE" || pos == "SO";
}

inline std::optional<SyllableString> korean_surface(const TaggedMorpheme& m) {
  if (is_hangul_text(m.surface)) return decompose_utf8(m.surface);
  if (foreign_tag(m.pos)) return std::nullopt;
  try {
    return deromanize(m.surface);
  } catch (const UnknownToken&) {
    return std::nullopt;
  }
}

// The overlay of a template on the CCV output: template positions that differ
// from the graphemes win, everything else comes from the CCV pass.
inline SyllableString overlay(const SyllableString& g, const SyllableString& tmpl, const CcvRuleSet& rules,
                              std::vector<std::size_t>& fired) {
  CcvLocks locks;
  locks.initial.resize(g.size());
  locks.final_c.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    locks.initial[i] = tmpl[i].initial != g[i].initial;
    locks.final_c[i] = tmpl[i].final != g[i].final;
  }
  auto out = apply_ccv(g, rules, locks, &fired);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (locks.initial[i]) out[i].initial = tmpl[i].initial;
    if (locks.final_c[i]) out[i].final = tmpl[i].final;
    out[i].vowel = tmpl[i].vowel;
  }
  return out;
}

}  // namespace detail

/// Candidate pronunciations for one morpheme, best first. An exact
/// dictionary hit wins outright; otherwise every matching pattern row
/// contributes; otherwise a single identity candidate with neutral labels.
inline std::vector<Candidate> generate_candidates(const TaggedMorpheme& m, const std::string& latin,
                                                  const Resources& res, std::vector<std::string>& diagnostics) {
  std::vector<Candidate> out;
  auto known = [&](const std::string& left, const std::string& right) {
    if (res.connectivity.knows_left(left) && res.connectivity.knows_right(right)) return true;
    diagnostics.push_back(m.surface + ": dropped candidate with unknown label [" + left + " " + right + "]");
    return false;
  };
  auto exact = latin.empty() ? res.dictionary.lookup(m.pos, m.graphemes) : res.dictionary.lookup_literal(m.pos, latin);
  for (const auto* e : exact)
    if (known(e->row.left_conn, e->row.right_conn))
      out.push_back({e->phonemes, e->row.left_conn, e->row.right_conn, CandidateSource::Exact,
                     res.dictionary.index_of(e), {}});
  if (!out.empty() || m.graphemes.empty()) return out;
  for (auto& pm : res.patterns.match(m.pos, m.graphemes)) {
    if (!known(pm.left_conn, pm.right_conn)) continue;
    Candidate c{{}, pm.left_conn, pm.right_conn, CandidateSource::Pattern, res.patterns.index_of(pm.entry), {}};
    c.phonemes = detail::overlay(m.graphemes, pm.phonemes, res.ccv, c.ccv_rules);
    out.push_back(std::move(c));
  }
  if (out.empty()) {
    Candidate c{{}, kNeutralLabel, kNeutralLabel, CandidateSource::Identity, 0, {}};
    c.phonemes = apply_ccv(m.graphemes, res.ccv, {}, &c.ccv_rules);
    out.push_back(std::move(c));
  }
  return out;
}

/// Converts one tagged sentence.
inline ConversionResult convert(std::string_view sentence, const Resources& res, const ConvertOptions& opt = {}) {
  ConversionResult r;
  auto parsed = parse_tagged(sentence);
  for (const auto& m : parsed)
    if (!res.breaks.known(m.pos)) throw UnknownTag(m.pos);

  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (detail::punctuation_tag(parsed[i].pos) && !is_hangul_text(parsed[i].surface)) continue;
    MorphemeResult mr;
    mr.morpheme = parsed[i];
    std::string latin;
    if (auto g = detail::korean_surface(parsed[i])) {
      mr.morpheme.graphemes = std::move(*g);
    } else {
      const auto& s = parsed[i].surface;
      mr.original = s;
      std::string hangul;
      try {
        auto tok = classify(s, res.readings);
        mr.kind = tok.kind;
        auto scanned = tok.kind == TokenKind::Number ? detail::scan_number(s) : std::nullopt;
        bool counter_follows = i + 1 < parsed.size() && res.readings.is_counter(parsed[i + 1].surface);
        if (scanned && counter_follows && !scanned->negative && !scanned->has_point && scanned->integer.size() <= 2 &&
            detail::to_int(scanned->integer) >= 1) {
          hangul = expand_number(s, NumberStyle::NativeKorean, res.readings, true);
        } else {
          auto ex = expand_token(tok, res.readings);
          if (ex.lexicon_request && !res.dictionary.lookup_literal(parsed[i].pos, s).empty()) latin = s;
          else if (ex.lexicon_request) {
            r.diagnostics.push_back(s + ": not in the dictionary, spelled out");
            hangul = spell_out(s, res.readings);
          } else {
            hangul = ex.hangul;
          }
        }
      } catch (const Error& e) {
        r.diagnostics.push_back(std::string(e.what()) + ", spelled out");
        hangul = spell_out(s, res.readings);
      }
      if (latin.empty() && hangul.empty()) {
        r.diagnostics.push_back(s + ": nothing to pronounce, dropped");
        continue;
      }
      if (!hangul.empty()) mr.morpheme.graphemes = decompose_utf8(hangul);
    }
    mr.candidates = generate_candidates(mr.morpheme, latin, res, r.diagnostics);
    r.morphemes.push_back(std::move(mr));
  }
  if (r.morphemes.empty()) return r;

  std::vector<TaggedMorpheme> kept;
  for (const auto& m : r.morphemes) kept.push_back(m.morpheme);
  r.segmentation = detect_breaks(kept, res.breaks, opt.limits);

  std::vector<std::vector<LatticeNode>> columns;
  for (const auto& m : r.morphemes) {
    columns.emplace_back();
    for (const auto& c : m.candidates) columns.back().push_back({c.left, c.right});
  }
  r.lattice = build_and_prune(std::move(columns), r.segmentation.break_after, res.connectivity, opt.relax);
  for (const auto& d : r.lattice.diagnostics) r.diagnostics.push_back(d);
  auto path = select_path(r.lattice, res.connectivity);
  for (std::size_t i = 0; i < path.size(); ++i) r.morphemes[i].chosen = path[i];
  return r;
}

/// "w-o-r-d word | word": phrases by " | ", words by " ", syllables by "-".
inline std::string render(const std::vector<std::vector<SyllableString>>& phrases) {
  std::string out;
  for (std::size_t p = 0; p < phrases.size(); ++p) {
    if (p) out += " | ";
    for (std::size_t w = 0; w < phrases[p].size(); ++w) {
      if (w) out += ' ';
      out += romanize(phrases[p][w]);
    }
  }
  return out;
}

/// Compact form: syllables run together, words joined by "-".
inline std::string render_compact(const std::vector<std::vector<SyllableString>>& phrases) {
  std::string out;
  for (std::size_t p = 0; p < phrases.size(); ++p) {
    if (p) out += " | ";
    for (std::size_t w = 0; w < phrases[p].size(); ++w) {
      if (w) out += '-';
      out += romanize_compact(phrases[p][w]);
    }
  }
  return out;
}

inline std::string render(const ConversionResult& r) { return render(r.phrases()); }
inline std::string render_compact(const ConversionResult& r) { return render_compact(r.phrases()); }

/// Parses a reference transcription in the canonical rendering.
inline std::vector<std::vector<SyllableString>> parse_reference(std::string_view ref) {
  std::vector<std::vector<SyllableString>> out;
  for (const auto& phrase : split(ref, '|')) {
    out.emplace_back();
    for (const auto& w : split_ws(phrase)) out.back().push_back(deromanize(w));
    if (out.back().empty()) throw Error("empty phrase in reference");
  }
  return out;
}

inline std::string inspect(const ConversionResult& r) {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> nodes;
  std::vector<std::size_t> choice;
  for (const auto& m : r.morphemes) {
    names.push_back(m.morpheme.surface + "/" + m.morpheme.pos +
                    (m.original.empty() ? "" : " (" + compose_utf8(m.morpheme.graphemes) + ")"));
    nodes.emplace_back();
    for (const auto& c : m.candidates)
      nodes.back().push_back(romanize(c.phonemes) + " " + std::string(to_string(c.source)) + "#" + std::to_string(c.entry));
    choice.push_back(m.chosen);
  }
  return dump(r.lattice, names, nodes, choice);
}

/// Result of converting one line of a batch.
struct BatchItem {
  std::optional<ConversionResult> result;
  std::string error;
};

/// Converts lines on `jobs` worker threads. Output order follows input order.
inline std::vector<BatchItem> convert_batch(const std::vector<std::string>& lines, const Resources& res,
                                            const ConvertOptions& opt = {}, unsigned jobs = 1) {
  std::vector<BatchItem> out(lines.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < lines.size();) {
      try {
        out[i].result = convert(lines[i], res, opt);
      } catch (const Error& e) {
        out[i].error = e.what();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, lines.size()))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

template <typename T>
std::size_t levenshtein(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

struct EvalFailure {
  std::size_t line;
  std::string sentence;
  std::string expected;
  std::string got;
};

struct EvalReport {
  std::size_t sentences = 0;
  std::size_t correct = 0;
  std::size_t reference_jamo = 0;
  std::size_t edits = 0;
  std::vector<EvalFailure> failures;
  std::vector<std::pair<std::size_t, std::string>> skipped;  // corpus line, reason
  std::string error;  // set when nothing could be evaluated

  double sentence_accuracy() const { return sentences ? static_cast<double>(correct) / static_cast<double>(sentences) : 0.0; }
  double grapheme_accuracy() const {
    if (!reference_jamo) return 0.0;
    double a = 1.0 - static_cast<double>(edits) / static_cast<double>(reference_jamo);
    return a < 0 ? 0.0 : a;
  }
};

struct CorpusLine {
  std::size_t line;
  std::string sentence;
  std::string reference;
};

/// Reads "tagged sentence<TAB>reference" lines.
inline std::vector<CorpusLine> load_corpus(const std::string& path) {
  std::vector<CorpusLine> out;
  read_resource_lines(path, [&](std::string_view line, std::size_t no) {
    auto f = split(line, '\t');
    if (f.size() != 2) throw ResourceError(path, no, "expected: tagged sentence<TAB>reference");
    out.push_back({no, std::string(trim(f[0])), std::string(trim(f[1]))});
  });
  return out;
}

inline std::vector<Jamo> flat_jamo(const std::vector<std::vector<SyllableString>>& phrases) {
  std::vector<Jamo> out;
  for (const auto& p : phrases)
    for (const auto& w : p) {
      auto f = flatten(w);
      out.insert(out.end(), f.begin(), f.end());
    }
  return out;
}

/// Sentence accuracy (exact match of phrases, words and syllables) and
/// grapheme accuracy (1 - jamo edit distance / reference jamo).
inline EvalReport evaluate(const std::vector<CorpusLine>& corpus, const Resources& res, const ConvertOptions& opt = {},
                           unsigned jobs = 1) {
  EvalReport rep;
  if (corpus.empty()) {
    rep.error = "empty corpus";
    return rep;
  }
  std::vector<std::string> lines;
  for (const auto& c : corpus) lines.push_back(c.sentence);
  auto results = convert_batch(lines, res, opt, jobs);
  // deterministic reduction in corpus order
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::vector<std::vector<SyllableString>> ref;
    try {
      ref = parse_reference(corpus[i].reference);
    } catch (const Error& e) {
      rep.skipped.emplace_back(corpus[i].line, std::string("bad reference: ") + e.what());
      continue;
    }
    auto ref_flat = flat_jamo(ref);
    ++rep.sentences;
    rep.reference_jamo += ref_flat.size();
    if (!results[i].result) {
      rep.edits += ref_flat.size();
      rep.failures.push_back({corpus[i].line, corpus[i].sentence, corpus[i].reference, "error: " + results[i].error});
      continue;
    }
    auto got = results[i].result->phrases();
    rep.edits += levenshtein(flat_jamo(got), ref_flat);
    if (got == ref) ++rep.correct;
    else rep.failures.push_back({corpus[i].line, corpus[i].sentence, render(ref), render(got)});
  }
  if (!rep.sentences) rep.error = "no evaluable sentences";
  return rep;
}

}  // namespace kg2p
