#pragma once

// Hangul syllable codec: precomposed syllables <-> jamo triples <-> the
// romanized alphabet used by every resource file.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kg2p/error.hpp"
#include "kg2p/text.hpp"

namespace kg2p {

enum class JamoClass : std::uint8_t { Initial, Vowel, Final };

inline constexpr int kInitialCount = 19;
inline constexpr int kVowelCount = 21;
/// Finals that compose into a precomposed syllable.
inline constexpr int kComposableFinalCount = 27;
/// Composable finals plus phoneme-only finals.
inline constexpr int kFinalCount = 28;

inline constexpr char32_t kSyllableBase = 0xAC00;
inline constexpr char32_t kSyllableLast = 0xD7A3;

/// Letter identity shared by initial and final positions. Compatibility jamo
/// code points, except the silent initial and phoneme-only finals which get
/// private-use values.
using Letter = char32_t;
inline constexpr Letter kSilence = 0xE000;
inline constexpr Letter kLinkedBss = 0xE001;

struct Jamo {
  JamoClass cls;
  std::uint8_t index;

  friend constexpr bool operator==(const Jamo&, const Jamo&) = default;
  friend constexpr auto operator<=>(const Jamo&, const Jamo&) = default;

  constexpr bool is_vowel() const { return cls == JamoClass::Vowel; }
  constexpr bool is_consonant() const { return cls != JamoClass::Vowel; }
};

constexpr Jamo initial(int i) { return {JamoClass::Initial, static_cast<std::uint8_t>(i)}; }
constexpr Jamo vowel(int i) { return {JamoClass::Vowel, static_cast<std::uint8_t>(i)}; }
constexpr Jamo final_(int i) { return {JamoClass::Final, static_cast<std::uint8_t>(i)}; }

inline constexpr Jamo kSilentInitial = initial(11);

struct Syllable {
  Jamo initial;
  Jamo vowel;
  std::optional<Jamo> final;

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// A grapheme or phoneme string: one triple per syllable.
using SyllableString = std::vector<Syllable>;

namespace detail {

struct JamoInfo {
  char32_t compat;        // compatibility jamo, 0 if none
  std::string_view token;  // canonical romanization
  std::string_view edge;   // word-edge romanization, empty if same as token
  Letter letter;
};

inline constexpr std::array<JamoInfo, kInitialCount> kInitials{{
    {0x3131, "g", "k", 0x3131},  {0x3132, "gg", "", 0x3132}, {0x3134, "n", "", 0x3134},
    {0x3137, "d", "t", 0x3137},  {0x3138, "tt", "", 0x3138}, {0x3139, "r", "", 0x3139},
    {0x3141, "m", "", 0x3141},   {0x3142, "b", "p", 0x3142}, {0x3143, "pp", "", 0x3143},
    {0x3145, "s", "", 0x3145},   {0x3146, "ss", "", 0x3146}, {0x3147, "", "", kSilence},
    {0x3148, "j", "", 0x3148},   {0x3149, "jj", "", 0x3149}, {0x314A, "ch", "", 0x314A},
    {0x314B, "kh", "", 0x314B},  {0x314C, "th", "", 0x314C}, {0x314D, "ph", "", 0x314D},
    {0x314E, "h", "", 0x314E},
}};

inline constexpr std::array<JamoInfo, kVowelCount> kVowels{{
    {0x314F, "a", "", 0x314F},   {0x3150, "ae", "", 0x3150},  {0x3151, "ya", "", 0x3151},
    {0x3152, "yae", "", 0x3152}, {0x3153, "eo", "", 0x3153},  {0x3154, "e", "", 0x3154},
    {0x3155, "yeo", "", 0x3155}, {0x3156, "ye", "", 0x3156},  {0x3157, "o", "", 0x3157},
    {0x3158, "wa", "", 0x3158},  {0x3159, "wae", "", 0x3159}, {0x315A, "oe", "", 0x315A},
    {0x315B, "yo", "", 0x315B},  {0x315C, "u", "", 0x315C},   {0x315D, "wo", "", 0x315D},
    {0x315E, "we", "", 0x315E},  {0x315F, "wi", "", 0x315F},  {0x3160, "yu", "", 0x3160},
    {0x3161, "eu", "", 0x3161},  {0x3162, "ui", "", 0x3162},  {0x3163, "i", "", 0x3163},
}};

inline constexpr std::array<JamoInfo, kFinalCount> kFinals{{
    {0x3131, "g", "k", 0x3131},   {0x3132, "gg", "", 0x3132},  {0x3133, "gs", "", 0x3133},
    {0x3134, "n", "", 0x3134},    {0x3135, "nj", "", 0x3135},  {0x3136, "nh", "", 0x3136},
    {0x3137, "d", "t", 0x3137},   {0x3139, "l", "", 0x3139},   {0x313A, "lg", "", 0x313A},
    {0x313B, "lm", "", 0x313B},   {0x313C, "lb", "", 0x313C},  {0x313D, "ls", "", 0x313D},
    {0x313E, "lth", "", 0x313E},  {0x313F, "lph", "", 0x313F}, {0x3140, "lh", "", 0x3140},
    {0x3141, "m", "", 0x3141},    {0x3142, "b", "p", 0x3142},  {0x3144, "bs", "", 0x3144},
    {0x3145, "s", "", 0x3145},    {0x3146, "ss", "", 0x3146},  {0x3147, "ng", "", 0x3147},
    {0x3148, "j", "", 0x3148},    {0x314A, "ch", "", 0x314A},  {0x314B, "kh", "", 0x314B},
    {0x314C, "th", "", 0x314C},   {0x314D, "ph", "", 0x314D},  {0x314E, "h", "", 0x314E},
    // phoneme-only: 'bs' before a vowel, released as b + tense ss
    {0, "bss", "", kLinkedBss},
}};

inline const JamoInfo& info(Jamo j) {
  switch (j.cls) {
    case JamoClass::Initial: return kInitials.at(j.index);
    case JamoClass::Vowel: return kVowels.at(j.index);
    case JamoClass::Final: return kFinals.at(j.index);
  }
  return kInitials[0];
}

}  // namespace detail

/// One row of the romanization table. `kind` is one of: initial,
/// initial-edge, initial-alias, vowel, final, final-edge, final-phoneme.
struct RomanizationRow {
  std::string kind;
  std::string token;
  std::string jamo;  // UTF-8 compatibility jamo
  Jamo target;
};

namespace detail {

inline std::string compat_text(Jamo j) {
  if (j.cls == JamoClass::Final && j.index == kComposableFinalCount) return "ㅂㅆ";
  std::string s;
  utf8_append(s, info(j).compat);
  return s;
}

inline std::vector<RomanizationRow> build_romanization_rows() {
  std::vector<RomanizationRow> rows;
  for (int i = 0; i < kInitialCount; ++i) {
    auto j = initial(i);
    rows.push_back({"initial", std::string(kInitials[i].token), compat_text(j), j});
    if (!kInitials[i].edge.empty()) rows.push_back({"initial-edge", std::string(kInitials[i].edge), compat_text(j), j});
  }
  rows.push_back({"initial-alias", "_", compat_text(kSilentInitial), kSilentInitial});
  rows.push_back({"initial-alias", "kk", compat_text(initial(1)), initial(1)});
  rows.push_back({"initial-alias", "dd", compat_text(initial(4)), initial(4)});
  rows.push_back({"initial-alias", "bb", compat_text(initial(8)), initial(8)});
  for (int i = 0; i < kVowelCount; ++i) rows.push_back({"vowel", std::string(kVowels[i].token), compat_text(vowel(i)), vowel(i)});
  for (int i = 0; i < kFinalCount; ++i) {
    auto j = final_(i);
    const char* kind = i < kComposableFinalCount ? "final" : "final-phoneme";
    rows.push_back({kind, std::string(kFinals[i].token), compat_text(j), j});
    if (!kFinals[i].edge.empty()) rows.push_back({"final-edge", std::string(kFinals[i].edge), compat_text(j), j});
  }
  return rows;
}

struct Tables {
  std::vector<RomanizationRow> rows = build_romanization_rows();
  std::map<std::string, Jamo, std::less<>> initials, vowels, finals;
  std::map<std::string, Letter, std::less<>> consonant_letters;
  std::map<Letter, Jamo> initial_by_letter, final_by_letter;

  Tables() {
    for (const auto& r : rows) {
      auto& m = r.target.cls == JamoClass::Initial ? initials
                : r.target.cls == JamoClass::Vowel ? vowels
                                                    : finals;
      m.emplace(r.token, r.target);
      if (r.target.cls != JamoClass::Vowel && !r.token.empty()) consonant_letters.emplace(r.token, info(r.target).letter);
    }
    for (int i = 0; i < kInitialCount; ++i) initial_by_letter.emplace(kInitials[i].letter, initial(i));
    for (int i = 0; i < kFinalCount; ++i) final_by_letter.emplace(kFinals[i].letter, final_(i));
  }
};

inline const Tables& tables() {
  static const Tables t;
  return t;
}

inline bool is_vowel_char(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'w' || c == 'y';
}

inline bool is_consonant_char(char c) { return (c >= 'a' && c <= 'z' && !is_vowel_char(c)) || c == '_'; }

}  // namespace detail

/// The full romanization table, in the order of data/romanization.tsv.
inline const std::vector<RomanizationRow>& romanization_table() { return detail::tables().rows; }

inline Letter letter_of(Jamo j) { return detail::info(j).letter; }

/// Canonical (word-medial) romanization of one jamo. The silent initial is "".
inline std::string_view token_of(Jamo j) { return detail::info(j).token; }

/// Name of a jamo inside a connectivity label: initials use their word-edge
/// form and the silent initial is "_"; finals use the canonical token.
inline std::string label_name(Jamo j) {
  if (j == kSilentInitial) return "_";
  const auto& inf = detail::info(j);
  if (j.cls == JamoClass::Initial && !inf.edge.empty()) return std::string(inf.edge);
  return std::string(inf.token);
}

/// Romanization token used in rule files: like token_of, but "_" for silence.
inline std::string rule_token(Jamo j) {
  if (j == kSilentInitial) return "_";
  return std::string(token_of(j));
}

inline std::optional<Jamo> initial_from_letter(Letter l) {
  const auto& m = detail::tables().initial_by_letter;
  auto it = m.find(l);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

inline std::optional<Jamo> final_from_letter(Letter l) {
  const auto& m = detail::tables().final_by_letter;
  auto it = m.find(l);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

/// Class-agnostic lookup of a consonant token ("t", "d", "bs", "_", ...).
inline std::optional<Letter> consonant_letter(std::string_view token) {
  const auto& m = detail::tables().consonant_letters;
  auto it = m.find(token);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

inline std::optional<Jamo> lookup_token(JamoClass cls, std::string_view token) {
  const auto& t = detail::tables();
  const auto& m = cls == JamoClass::Initial ? t.initials : cls == JamoClass::Vowel ? t.vowels : t.finals;
  auto it = m.find(token);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

inline bool is_hangul_syllable(char32_t c) { return c >= kSyllableBase && c <= kSyllableLast; }

inline bool is_composable(const Syllable& s) {
  return s.initial.cls == JamoClass::Initial && s.initial.index < kInitialCount && s.vowel.cls == JamoClass::Vowel &&
         s.vowel.index < kVowelCount &&
         (!s.final || (s.final->cls == JamoClass::Final && s.final->index < kComposableFinalCount));
}

inline Syllable decompose_syllable(char32_t c) {
  auto offset = static_cast<int>(c - kSyllableBase);
  int f = offset % 28;
  int v = (offset / 28) % 21;
  int i = offset / (28 * 21);
  Syllable s{initial(i), vowel(v), std::nullopt};
  if (f != 0) s.final = final_(f - 1);
  return s;
}

inline char32_t compose_syllable(const Syllable& s) {
  if (!is_composable(s)) throw InvalidTriple("syllable is outside the composable inventory");
  int f = s.final ? s.final->index + 1 : 0;
  return kSyllableBase + static_cast<char32_t>((s.initial.index * 21 + s.vowel.index) * 28 + f);
}

inline SyllableString decompose(std::u32string_view text) {
  SyllableString out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!is_hangul_syllable(text[i])) throw NonHangulCharacter(i);
    out.push_back(decompose_syllable(text[i]));
  }
  return out;
}

inline SyllableString decompose_utf8(std::string_view text) { return decompose(utf8_decode(text)); }

inline std::u32string compose(const SyllableString& s) {
  std::u32string out;
  out.reserve(s.size());
  for (const auto& syl : s) out.push_back(compose_syllable(syl));
  return out;
}

inline std::string compose_utf8(const SyllableString& s) { return utf8_encode(compose(s)); }

/// True if every code point is a precomposed syllable (and there is at least one).
inline bool is_hangul_text(std::string_view utf8) {
  auto u = utf8_decode(utf8);
  if (u.empty()) return false;
  for (char32_t c : u)
    if (!is_hangul_syllable(c)) return false;
  return true;
}

/// Romanizes one syllable. `word_start`/`word_end` select the word-edge
/// spellings of the plain stops (k/t/p instead of g/d/b).
inline std::string romanize_syllable(const Syllable& s, bool word_start, bool word_end) {
  std::string out;
  const auto& ini = detail::info(s.initial);
  out += word_start && !ini.edge.empty() ? ini.edge : ini.token;
  out += detail::info(s.vowel).token;
  if (s.final) {
    const auto& fin = detail::info(*s.final);
    out += word_end && !fin.edge.empty() ? fin.edge : fin.token;
  }
  return out;
}

/// Romanizes a string treated as one word, syllables joined by '-'.
inline std::string romanize(const SyllableString& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += '-';
    out += romanize_syllable(s[i], i == 0, i + 1 == s.size());
  }
  return out;
}

/// Romanizes a word without syllable separators.
inline std::string romanize_compact(const SyllableString& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += romanize_syllable(s[i], i == 0, i + 1 == s.size());
  return out;
}

namespace detail {

// Parses one '-'-free segment. Several syllables are allowed; a consonant run
// between two vowels is split with the longest valid initial first.
inline void parse_segment(std::string_view seg, std::size_t base, SyllableString& out) {
  std::size_t i = 0;
  auto run = [&](auto pred) {
    std::size_t j = i;
    while (j < seg.size() && pred(seg[j])) ++j;
    auto r = seg.substr(i, j - i);
    i = j;
    return r;
  };
  std::string_view onset = run(is_consonant_char);
  while (true) {
    std::size_t vpos = i;
    std::string_view nucleus = run(is_vowel_char);
    if (nucleus.empty()) {
      if (i < seg.size()) throw UnknownToken(base + i, std::string(1, seg[i]));
      throw UnknownToken(base + vpos, "syllable without a vowel");
    }
    auto ini = lookup_token(JamoClass::Initial, onset);
    if (!ini) throw UnknownToken(base + vpos - onset.size(), std::string(onset));
    auto vow = lookup_token(JamoClass::Vowel, nucleus);
    if (!vow) throw UnknownToken(base + vpos, std::string(nucleus));
    std::size_t cpos = i;
    std::string_view coda = run(is_consonant_char);
    if (i < seg.size() && !is_vowel_char(seg[i])) throw UnknownToken(base + i, std::string(1, seg[i]));
    Syllable syl{*ini, *vow, std::nullopt};
    if (i == seg.size()) {
      if (!coda.empty()) {
        auto fin = lookup_token(JamoClass::Final, coda);
        if (!fin) throw UnknownToken(base + cpos, std::string(coda));
        syl.final = *fin;
      }
      out.push_back(syl);
      return;
    }
    // Another syllable follows inside the segment.
    bool split = false;
    for (std::size_t flen = 0; flen <= coda.size(); ++flen) {
      auto f = coda.substr(0, flen);
      auto rest = coda.substr(flen);
      if (!lookup_token(JamoClass::Initial, rest)) continue;
      if (flen > 0) {
        auto fin = lookup_token(JamoClass::Final, f);
        if (!fin) continue;
        syl.final = *fin;
      }
      onset = rest;
      split = true;
      break;
    }
    if (!split) throw UnknownToken(base + cpos, std::string(coda));
    out.push_back(syl);
  }
}

}  // namespace detail

/// Parses a romanized string. Syllables are separated by '-' (required where
/// the split would otherwise be ambiguous); an empty onset is the silent
/// initial, also spelled "_".
inline SyllableString deromanize(std::string_view text) {
  SyllableString out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find('-', start);
    auto seg = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    if (seg.empty()) throw UnknownToken(start, "empty syllable");
    detail::parse_segment(seg, start, out);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

/// Accepts either Hangul text or a romanized string.
inline SyllableString parse_surface(std::string_view text) {
  if (is_hangul_text(text)) return decompose_utf8(text);
  return deromanize(text);
}

/// Flat jamo sequence: initial, vowel, [final] per syllable.
inline std::vector<Jamo> flatten(const SyllableString& s) {
  std::vector<Jamo> out;
  out.reserve(s.size() * 3);
  for (const auto& syl : s) {
    out.push_back(syl.initial);
    out.push_back(syl.vowel);
    if (syl.final) out.push_back(*syl.final);
  }
  return out;
}

/// A letter sequence with vowels marked, as produced by template substitution.
struct LetterItem {
  bool is_vowel;
  Letter letter;  // compat code point (or kSilence / kLinkedBss) for consonants
  Jamo vowel_jamo;
};

/// Regroups letters into syllables: a consonant directly before a vowel is an
/// initial, any other consonant is the final of the preceding syllable.
/// Returns nullopt when the letters do not form valid syllables.
inline std::optional<SyllableString> syllabify(const std::vector<LetterItem>& items) {
  SyllableString out;
  std::size_t i = 0;
  while (i < items.size()) {
    if (items[i].is_vowel || i + 1 >= items.size() || !items[i + 1].is_vowel) return std::nullopt;
    auto ini = initial_from_letter(items[i].letter);
    if (!ini) return std::nullopt;
    Syllable syl{*ini, items[i + 1].vowel_jamo, std::nullopt};
    i += 2;
    if (i < items.size() && !items[i].is_vowel && !(i + 1 < items.size() && items[i + 1].is_vowel)) {
      auto fin = final_from_letter(items[i].letter);
      if (!fin) return std::nullopt;
      syl.final = *fin;
      ++i;
    }
    out.push_back(syl);
  }
  return out;
}

inline LetterItem letter_item(Jamo j) {
  if (j.is_vowel()) return {true, 0, j};
  return {false, letter_of(j), {}};
}

inline std::vector<Jamo> vowels_of(const SyllableString& s) {
  std::vector<Jamo> out;
  out.reserve(s.size());
  for (const auto& syl : s) out.push_back(syl.vowel);
  return out;
}

}  // namespace kg2p
