#pragma once

// Candidate pronunciations for a morpheme: an exact-match phonetic dictionary
// for hard cases and a meta-character pattern dictionary for everything else.
//
// Pattern meta-characters, matched against the flat jamo sequence
// (initial, vowel, [final], initial, ...):
//   Z  one consonant, the silent initial included
//   Y  one consonant other than the silent initial
//   V  one vowel
//   *  any jamo sequence, possibly empty (non-greedy, backtracking)
// Patterns are anchored at both ends of the morpheme.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kg2p/error.hpp"
#include "kg2p/hangul.hpp"
#include "kg2p/text.hpp"

namespace kg2p {

/// One row of either dictionary file.
struct PhoneticEntry {
  std::vector<std::string> pos;  // one or more tags
  std::string morpheme;          // as written (romanized, may contain meta-characters)
  std::string phonemes;          // as written
  std::string left_conn;
  std::string right_conn;
  std::size_t line = 0;
};

enum class PatternItemKind { Literal, AnyConsonant, NonSilentConsonant, AnyVowel, AnySequence };

struct PatternItem {
  PatternItemKind kind = PatternItemKind::Literal;
  bool is_vowel = false;
  Letter letter = 0;  // literal consonant
  Jamo vowel_jamo{};  // literal vowel

  bool is_meta() const { return kind != PatternItemKind::Literal; }
  char meta_char() const {
    switch (kind) {
      case PatternItemKind::AnyConsonant: return 'Z';
      case PatternItemKind::NonSilentConsonant: return 'Y';
      case PatternItemKind::AnyVowel: return 'V';
      case PatternItemKind::AnySequence: return '*';
      case PatternItemKind::Literal: break;
    }
    return 0;
  }
};

using Pattern = std::vector<PatternItem>;

inline bool is_meta_char(char c) { return c == 'Z' || c == 'Y' || c == 'V' || c == '*'; }

namespace detail {

inline PatternItem meta_item(char c) {
  PatternItem it;
  it.kind = c == 'Z'   ? PatternItemKind::AnyConsonant
            : c == 'Y' ? PatternItemKind::NonSilentConsonant
            : c == 'V' ? PatternItemKind::AnyVowel
                       : PatternItemKind::AnySequence;
  return it;
}

inline PatternItem consonant_item(std::string_view tok, std::size_t pos) {
  auto l = consonant_letter(tok);
  if (!l) throw UnknownToken(pos, std::string(tok));
  PatternItem it;
  it.letter = *l;
  return it;
}

// A literal run between meta-characters. Consonant runs at the edges of a
// '-'-delimited piece are single tokens; runs between two vowels are split
// onset-first, as in deromanize().
inline void parse_literal_run(std::string_view run, std::size_t base, Pattern& out) {
  std::size_t start = 0;
  while (start <= run.size()) {
    auto dash = run.find('-', start);
    auto piece = run.substr(start, dash == std::string_view::npos ? std::string_view::npos : dash - start);
    std::size_t i = 0;
    bool seen_vowel = false;
    while (i < piece.size()) {
      std::size_t j = i;
      if (is_vowel_char(piece[i])) {
        while (j < piece.size() && is_vowel_char(piece[j])) ++j;
        auto v = lookup_token(JamoClass::Vowel, piece.substr(i, j - i));
        if (!v) throw UnknownToken(base + start + i, std::string(piece.substr(i, j - i)));
        PatternItem it;
        it.is_vowel = true;
        it.vowel_jamo = *v;
        out.push_back(it);
        seen_vowel = true;
      } else if (is_consonant_char(piece[i])) {
        while (j < piece.size() && is_consonant_char(piece[j])) ++j;
        auto cons = piece.substr(i, j - i);
        bool vowel_follows = j < piece.size();
        if (seen_vowel && vowel_follows) {
          bool done = false;
          for (std::size_t flen = 0; flen <= cons.size() && !done; ++flen) {
            auto f = cons.substr(0, flen), rest = cons.substr(flen);
            if (!lookup_token(JamoClass::Initial, rest) || rest.empty()) continue;
            if (flen > 0 && !lookup_token(JamoClass::Final, f)) continue;
            if (flen > 0) out.push_back(consonant_item(f, base + start + i));
            out.push_back(consonant_item(rest, base + start + i + flen));
            done = true;
          }
          if (!done) throw UnknownToken(base + start + i, std::string(cons));
        } else {
          out.push_back(consonant_item(cons, base + start + i));
        }
      } else {
        throw UnknownToken(base + start + i, std::string(1, piece[i]));
      }
      i = j;
    }
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
}

}  // namespace detail

/// Parses a romanized pattern such as "t*d" or "Y*Z". Literal vowels at the
/// very start are not given a silent initial; write "_" explicitly.
inline Pattern parse_pattern(std::string_view text) {
  Pattern out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_meta_char(text[i])) {
      out.push_back(detail::meta_item(text[i]));
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_meta_char(text[j])) ++j;
    detail::parse_literal_run(text.substr(i, j - i), i, out);
    i = j;
  }
  return out;
}

/// Captured jamo per pattern item (empty for literals).
struct Bindings {
  std::vector<std::vector<Jamo>> captures;

  friend bool operator==(const Bindings&, const Bindings&) = default;
};

namespace detail {

inline bool item_matches(const PatternItem& it, Jamo j) {
  switch (it.kind) {
    case PatternItemKind::Literal:
      if (it.is_vowel) return j == it.vowel_jamo;
      return j.is_consonant() && letter_of(j) == it.letter;
    case PatternItemKind::AnyConsonant: return j.is_consonant();
    case PatternItemKind::NonSilentConsonant: return j.is_consonant() && j != kSilentInitial;
    case PatternItemKind::AnyVowel: return j.is_vowel();
    case PatternItemKind::AnySequence: return true;
  }
  return false;
}

inline bool match_from(const Pattern& p, std::size_t pi, const std::vector<Jamo>& s, std::size_t si, Bindings& b) {
  if (pi == p.size()) return si == s.size();
  const auto& it = p[pi];
  if (it.kind == PatternItemKind::AnySequence) {
    // shortest capture first
    for (std::size_t len = 0; si + len <= s.size(); ++len) {
      if (match_from(p, pi + 1, s, si + len, b)) {
        b.captures[pi].assign(s.begin() + static_cast<std::ptrdiff_t>(si),
                              s.begin() + static_cast<std::ptrdiff_t>(si + len));
        return true;
      }
    }
    return false;
  }
  if (si >= s.size() || !item_matches(it, s[si])) return false;
  if (!match_from(p, pi + 1, s, si + 1, b)) return false;
  if (it.is_meta()) b.captures[pi] = {s[si]};
  return true;
}

}  // namespace detail

/// Anchored match. Among several ways to match, the one with the shortest
/// first '*' capture wins, then the shortest second, and so on.
inline std::optional<Bindings> match(const Pattern& p, const std::vector<Jamo>& jamo) {
  Bindings b;
  b.captures.resize(p.size());
  if (!detail::match_from(p, 0, jamo, 0, b)) return std::nullopt;
  return b;
}

/// Fills a template with the captures of a matched pattern: the k-th
/// occurrence of a meta-character in the template takes the capture of the
/// k-th occurrence of the same meta-character in the pattern.
inline std::optional<SyllableString> substitute(const Pattern& pattern, const Bindings& b, const Pattern& tmpl) {
  std::map<char, std::vector<std::size_t>> occurrences;
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (pattern[i].is_meta()) occurrences[pattern[i].meta_char()].push_back(i);
  std::map<char, std::size_t> used;
  std::vector<LetterItem> items;
  for (const auto& t : tmpl) {
    if (!t.is_meta()) {
      items.push_back(t.is_vowel ? LetterItem{true, 0, t.vowel_jamo} : LetterItem{false, t.letter, {}});
      continue;
    }
    auto& occ = occurrences[t.meta_char()];
    auto k = used[t.meta_char()]++;
    if (k >= occ.size()) return std::nullopt;
    for (auto j : b.captures[occ[k]]) items.push_back(letter_item(j));
  }
  return syllabify(items);
}

/// Replaces Z/Y/V in a connectivity label with the label name of the bound
/// jamo. `from_start` picks the first occurrence of the meta-character in the
/// pattern (left labels), otherwise the last (right labels).
inline std::string substitute_label(std::string_view label, const Pattern& pattern, const Bindings& b,
                                    bool from_start) {
  std::string out;
  for (char c : label) {
    if (c != 'Z' && c != 'Y' && c != 'V') {
      out += c;
      continue;
    }
    std::optional<std::size_t> pos;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      if (pattern[i].meta_char() != c) continue;
      pos = i;
      if (from_start) break;
    }
    if (!pos || b.captures[*pos].empty()) {
      out += c;
      continue;
    }
    out += label_name(b.captures[*pos].front());
  }
  return out;
}

inline std::size_t count_stars(const Pattern& p) {
  return static_cast<std::size_t>(std::count_if(p.begin(), p.end(), [](const auto& i) { return i.kind == PatternItemKind::AnySequence; }));
}

inline std::size_t count_literals(const Pattern& p) {
  return static_cast<std::size_t>(std::count_if(p.begin(), p.end(), [](const auto& i) { return !i.is_meta(); }));
}

namespace detail {

inline std::string jamo_key(const std::vector<Jamo>& jamo) {
  std::string k;
  k.reserve(jamo.size() * 2);
  for (auto j : jamo) {
    k.push_back(static_cast<char>(j.cls));
    k.push_back(static_cast<char>(j.index));
  }
  return k;
}

inline PhoneticEntry parse_entry_line(const std::string& path, std::string_view line, std::size_t no) {
  auto f = split(line, '\t');
  if (f.size() != 5) throw ResourceError(path, no, "expected 5 tab-separated fields: POS, morpheme, phonemes, left, right");
  PhoneticEntry e;
  for (const auto& t : split(f[0], ',')) {
    auto tag = std::string(trim(t));
    if (tag.empty()) throw ResourceError(path, no, "empty POS tag");
    e.pos.push_back(tag);
  }
  e.morpheme = std::string(trim(f[1]));
  e.phonemes = std::string(trim(f[2]));
  e.left_conn = std::string(trim(f[3]));
  e.right_conn = std::string(trim(f[4]));
  e.line = no;
  if (e.morpheme.empty() || e.phonemes.empty() || e.left_conn.empty() || e.right_conn.empty())
    throw ResourceError(path, no, "empty field");
  return e;
}

}  // namespace detail

/// Exact-match morpheme phonetic dictionary. A morpheme written "@text" is a
/// literal Latin-script surface (abbreviations and acronyms).
class PhoneticDictionary {
public:
  struct Entry {
    PhoneticEntry row;
    SyllableString phonemes;
  };

  void add(PhoneticEntry row, const std::string& source = "<memory>") {
    Entry e{row, {}};
    std::string surface_key;
    try {
      e.phonemes = deromanize(row.phonemes);
      if (!row.morpheme.empty() && row.morpheme.front() == '@') {
        surface_key = row.morpheme;
      } else {
        auto g = parse_surface(row.morpheme);
        for (const auto& s : g)
          if (!is_composable(s)) throw InvalidTriple("morpheme uses a phoneme-only jamo");
        if (g.size() != e.phonemes.size()) throw Error("syllable count differs between morpheme and phonemes");
        surface_key = detail::jamo_key(flatten(g));
      }
    } catch (const Error& err) {
      throw ResourceError(source, row.line, err.what());
    }
    std::size_t id = entries_.size();
    for (const auto& pos : row.pos) index_[pos + '\t' + surface_key].push_back(id);
    entries_.push_back(std::move(e));
  }

  /// Entries for (pos, surface) in file order; empty means out of vocabulary.
  std::vector<const Entry*> lookup(const std::string& pos, const SyllableString& surface) const {
    return find(pos + '\t' + detail::jamo_key(flatten(surface)));
  }

  std::vector<const Entry*> lookup_literal(const std::string& pos, std::string_view latin) const {
    return find(pos + "\t@" + std::string(latin));
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t index_of(const Entry* e) const { return static_cast<std::size_t>(e - entries_.data()); }

  static PhoneticDictionary load(const std::string& path) {
    PhoneticDictionary d;
    read_resource_lines(path, [&](std::string_view line, std::size_t no) { d.add(detail::parse_entry_line(path, line, no), path); });
    return d;
  }

private:
  std::vector<const Entry*> find(const std::string& key) const {
    std::vector<const Entry*> out;
    auto it = index_.find(key);
    if (it == index_.end()) return out;
    for (auto id : it->second) out.push_back(&entries_[id]);
    return out;
  }

  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
};

/// Morpheme phonetic pattern dictionary, indexed by (POS, first letter).
class PatternDictionary {
public:
  struct Entry {
    PhoneticEntry row;
    Pattern pattern;
    Pattern phoneme_template;
    std::size_t stars = 0;
    std::size_t literals = 0;
  };

  struct Match {
    const Entry* entry;
    Bindings bindings;
    SyllableString phonemes;
    std::string left_conn;
    std::string right_conn;
  };

  void add(PhoneticEntry row, const std::string& source = "<memory>") {
    Entry e{row, {}, {}, 0, 0};
    try {
      e.pattern = parse_pattern(row.morpheme);
      e.phoneme_template = parse_pattern(row.phonemes);
    } catch (const Error& err) {
      throw ResourceError(source, row.line, err.what());
    }
    if (e.pattern.empty()) throw ResourceError(source, row.line, "empty pattern");
    std::map<char, std::size_t> in_pattern, in_template;
    for (const auto& i : e.pattern)
      if (i.is_meta()) ++in_pattern[i.meta_char()];
    for (const auto& i : e.phoneme_template)
      if (i.is_meta() && ++in_template[i.meta_char()] > in_pattern[i.meta_char()])
        throw ResourceError(source, row.line, std::string("template meta-character '") + i.meta_char() + "' is not bound by the pattern");
    for (const auto* label : {&row.left_conn, &row.right_conn}) {
      for (char c : *label) {
        if (c == '*') throw ResourceError(source, row.line, "'*' is not allowed in a connectivity label");
        if ((c == 'Z' || c == 'Y' || c == 'V') && !in_pattern[c])
          throw ResourceError(source, row.line, std::string("label meta-character '") + c + "' is not bound by the pattern");
      }
    }
    e.stars = count_stars(e.pattern);
    e.literals = count_literals(e.pattern);
    std::size_t id = entries_.size();
    Letter first = e.pattern.front().is_meta() ? kAnyLetter : first_letter(e.pattern.front());
    for (const auto& pos : row.pos) index_[{pos, first}].push_back(id);
    entries_.push_back(std::move(e));
  }

  /// All entries for `pos` whose pattern matches, most specific first: fewer
  /// '*', then more literal jamo, then file order. Entries whose template
  /// does not yield well-formed syllables with the same syllable count are
  /// skipped. An empty result means no pattern applies.
  std::vector<Match> match(const std::string& pos, const SyllableString& surface) const {
    auto jamo = flatten(surface);
    std::vector<std::size_t> ids;
    if (!jamo.empty()) {
      Letter first = jamo.front().is_vowel() ? vowel_letter(jamo.front()) : letter_of(jamo.front());
      for (Letter key : {first, kAnyLetter}) {
        auto it = index_.find({pos, key});
        if (it != index_.end()) ids.insert(ids.end(), it->second.begin(), it->second.end());
      }
    }
    std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
      const auto &ea = entries_[a], &eb = entries_[b];
      if (ea.stars != eb.stars) return ea.stars < eb.stars;
      if (ea.literals != eb.literals) return ea.literals > eb.literals;
      return a < b;
    });
    std::vector<Match> out;
    for (auto id : ids) {
      const auto& e = entries_[id];
      auto b = kg2p::match(e.pattern, jamo);
      if (!b) continue;
      auto ph = substitute(e.pattern, *b, e.phoneme_template);
      if (!ph || ph->size() != surface.size()) continue;
      out.push_back({&e, *b, std::move(*ph), substitute_label(e.row.left_conn, e.pattern, *b, true),
                     substitute_label(e.row.right_conn, e.pattern, *b, false)});
    }
    return out;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t index_of(const Entry* e) const { return static_cast<std::size_t>(e - entries_.data()); }

  static PatternDictionary load(const std::string& path) {
    PatternDictionary d;
    read_resource_lines(path, [&](std::string_view line, std::size_t no) { d.add(detail::parse_entry_line(path, line, no), path); });
    return d;
  }

private:
  static constexpr Letter kAnyLetter = 0;

  static Letter vowel_letter(Jamo v) { return 0x10000 + v.index; }
  static Letter first_letter(const PatternItem& it) { return it.is_vowel ? vowel_letter(it.vowel_jamo) : it.letter; }

  std::vector<Entry> entries_;
  std::map<std::pair<std::string, Letter>, std::vector<std::size_t>> index_;
};

}  // namespace kg2p
