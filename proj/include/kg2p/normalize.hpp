#pragma once

// Non-Korean token normalization: numbers, dates, times, scores, arithmetic,
// phone numbers and Latin-script abbreviations/acronyms.

#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kg2p/error.hpp"
#include "kg2p/hangul.hpp"
#include "kg2p/text.hpp"

namespace kg2p {

enum class TokenKind { Number, Date, Time, Score, MathExpr, Phone, Abbreviation, SpelledAcronym, WordAcronym };

inline std::string_view to_string(TokenKind k) {
  switch (k) {
    case TokenKind::Number: return "Number";
    case TokenKind::Date: return "Date";
    case TokenKind::Time: return "Time";
    case TokenKind::Score: return "Score";
    case TokenKind::MathExpr: return "MathExpr";
    case TokenKind::Phone: return "Phone";
    case TokenKind::Abbreviation: return "Abbreviation";
    case TokenKind::SpelledAcronym: return "SpelledAcronym";
    case TokenKind::WordAcronym: return "WordAcronym";
  }
  return "?";
}

struct NonKoreanToken {
  std::string surface;
  TokenKind kind;
};

enum class NumberStyle { SinoKorean, NativeKorean };

/// Word tables for reading numbers and symbols, loaded from data/readings.tsv.
struct ReadingTables {
  std::map<int, std::string> digit;         // 0..9
  std::map<int, std::string> place;         // 1 = tens, 2 = hundreds, 3 = thousands
  std::map<int, std::string> myriad;        // 1 = 10^4, 2 = 10^8, ...
  std::map<int, std::string> native;        // 1..9 and 10, 20, ..., 90
  std::map<int, std::string> native_attr;   // attributive forms before a counter
  std::map<int, std::string> month;         // irregular month readings (without the unit)
  std::map<std::string, int> month_name;    // jan -> 1
  std::map<char, std::string> letter;       // Latin letter names, keyed by uppercase
  std::map<char, std::string> symbol;       // spelled-out symbols
  std::map<std::string, std::string> word;  // sign, point, plus, minus, times, divide, equals, fraction, versus
  std::map<std::string, std::string> unit;  // year, month, day, hour, minute
  std::map<int, std::string> phone_digit;   // digit readings overriding `digit` in phone numbers
  std::set<std::string> counters;           // Hangul counter words selecting native numerals

  const std::string& word_or_throw(const std::string& key) const {
    auto it = word.find(key);
    if (it == word.end()) throw Error("reading table has no word '" + key + "'");
    return it->second;
  }
  const std::string& unit_or_throw(const std::string& key) const {
    auto it = unit.find(key);
    if (it == unit.end()) throw Error("reading table has no unit '" + key + "'");
    return it->second;
  }
  bool is_counter(std::string_view hangul) const { return counters.count(std::string(hangul)) > 0; }

  static ReadingTables load(const std::string& path) {
    ReadingTables t;
    read_resource_lines(path, [&](std::string_view line, std::size_t no) {
      auto f = split(line, '\t');
      if (f.size() != 3) throw ResourceError(path, no, "expected 3 tab-separated fields");
      const auto& kind = f[0];
      const auto& key = f[1];
      const auto& value = f[2];
      auto as_int = [&]() {
        try {
          std::size_t used = 0;
          int v = std::stoi(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
          return v;
        } catch (const std::exception&) {
          throw ResourceError(path, no, "expected an integer key, got '" + key + "'");
        }
      };
      if (kind != "counter" && kind != "month-name" && kind != "letter" && kind != "symbol" && !is_hangul_text(value))
        throw ResourceError(path, no, "reading must be Hangul: '" + value + "'");
      if (kind == "digit") t.digit[as_int()] = value;
      else if (kind == "place") t.place[as_int()] = value;
      else if (kind == "myriad") t.myriad[as_int()] = value;
      else if (kind == "native") t.native[as_int()] = value;
      else if (kind == "native-attr") t.native_attr[as_int()] = value;
      else if (kind == "month") t.month[as_int()] = value;
      else if (kind == "month-name") {
        std::string k = key;
        for (auto& c : k) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        t.month_name[k] = std::stoi(value);
      } else if (kind == "letter" || kind == "symbol") {
        if (key.size() != 1) throw ResourceError(path, no, "letter/symbol key must be one character");
        if (!is_hangul_text(value)) throw ResourceError(path, no, "reading must be Hangul: '" + value + "'");
        (kind == "letter" ? t.letter : t.symbol)[kind == "letter" ? static_cast<char>(std::toupper(key[0])) : key[0]] = value;
      } else if (kind == "word") t.word[key] = value;
      else if (kind == "unit") t.unit[key] = value;
      else if (kind == "phone-digit") t.phone_digit[as_int()] = value;
      else if (kind == "counter") {
        if (!is_hangul_text(key)) throw ResourceError(path, no, "counter must be Hangul");
        t.counters.insert(key);
      } else {
        throw ResourceError(path, no, "unknown reading kind '" + kind + "'");
      }
    });
    for (int d = 0; d <= 9; ++d)
      if (!t.digit.count(d)) throw ResourceError(path, 0, "missing digit reading " + std::to_string(d));
    for (int p = 1; p <= 3; ++p)
      if (!t.place.count(p)) throw ResourceError(path, 0, "missing place reading " + std::to_string(p));
    return t;
  }
};

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

struct ParsedNumber {
  bool negative = false;
  std::string integer;   // digits only, commas removed
  std::string fraction;  // digits after the point, may be empty
  bool has_point = false;
};

// Deterministic automaton over the number grammar:
//   [+-]? ( d{1,3} (',' d{3})+ | d+ ) ( '.' d+ )?
inline std::optional<ParsedNumber> scan_number(std::string_view s) {
  enum class State { Start, Sign, Lead, Plain, GroupStart, Group, Point, Frac };
  ParsedNumber out;
  State st = State::Start;
  int lead = 0;   // digits before the first comma
  int group = 0;  // digits in the current comma group
  for (char c : s) {
    switch (st) {
      case State::Start:
        if (c == '-' || c == '+') {
          out.negative = c == '-';
          st = State::Sign;
          break;
        }
        [[fallthrough]];
      case State::Sign:
        if (!is_digit(c)) return std::nullopt;
        out.integer += c;
        lead = 1;
        st = State::Lead;
        break;
      case State::Lead:
        if (is_digit(c)) {
          out.integer += c;
          ++lead;
        } else if (c == ',' && lead <= 3) {
          group = 0;
          st = State::GroupStart;
        } else if (c == '.') {
          out.has_point = true;
          st = State::Point;
        } else {
          return std::nullopt;
        }
        if (lead > 3 && st == State::Lead) st = State::Plain;
        break;
      case State::Plain:
        if (is_digit(c)) out.integer += c;
        else if (c == '.') {
          out.has_point = true;
          st = State::Point;
        } else return std::nullopt;
        break;
      case State::GroupStart:
      case State::Group:
        if (is_digit(c) && group < 3) {
          out.integer += c;
          ++group;
          st = State::Group;
        } else if (c == ',' && group == 3) {
          group = 0;
          st = State::GroupStart;
        } else if (c == '.' && group == 3) {
          out.has_point = true;
          st = State::Point;
        } else {
          return std::nullopt;
        }
        break;
      case State::Point:
      case State::Frac:
        if (!is_digit(c)) return std::nullopt;
        out.fraction += c;
        st = State::Frac;
        break;
    }
  }
  bool accept = st == State::Lead || st == State::Plain || (st == State::Group && group == 3) || st == State::Frac;
  if (!accept) return std::nullopt;
  return out;
}

// Sino-Korean reading of a digit string (no sign, no commas).
inline std::string read_sino_integer(std::string_view digits, const ReadingTables& t) {
  auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return t.digit.at(0);
  digits = digits.substr(first);
  std::size_t groups = (digits.size() + 3) / 4;
  if (groups > t.myriad.size() + 1) throw MalformedNumber(std::string(digits));
  std::string out;
  std::size_t pos = 0;
  for (std::size_t g = groups; g-- > 0;) {
    std::size_t width = digits.size() - pos - g * 4;
    auto chunk = digits.substr(pos, width);
    pos += width;
    std::string words;
    for (std::size_t k = 0; k < chunk.size(); ++k) {
      int d = chunk[k] - '0';
      int place = static_cast<int>(chunk.size() - 1 - k);
      if (d == 0) continue;
      if (d != 1 || place == 0) words += t.digit.at(d);
      if (place > 0) words += t.place.at(place);
    }
    if (words.empty()) continue;
    // 10^4 alone is read without the leading one
    if (g == 1 && words == t.digit.at(1)) words.clear();
    out += words;
    if (g > 0) out += t.myriad.at(static_cast<int>(g));
  }
  return out;
}

inline std::string read_native(int n, bool attributive, const ReadingTables& t) {
  if (n < 1 || n > 99) throw MalformedNumber(std::to_string(n));
  int tens = n / 10 * 10, ones = n % 10;
  std::string out;
  if (ones == 0) {
    if (attributive && t.native_attr.count(tens)) return t.native_attr.at(tens);
    return t.native.at(tens);
  }
  if (tens) out += t.native.at(tens);
  out += attributive && t.native_attr.count(ones) ? t.native_attr.at(ones) : t.native.at(ones);
  return out;
}

inline std::string read_digits(std::string_view digits, const ReadingTables& t, bool phone) {
  std::string out;
  for (char c : digits) {
    if (!is_digit(c)) continue;
    int d = c - '0';
    if (phone && t.phone_digit.count(d)) out += t.phone_digit.at(d);
    else out += t.digit.at(d);
  }
  return out;
}

inline int to_int(std::string_view s) { return std::stoi(std::string(s)); }

inline bool pronounceable(std::string_view up) {
  auto is_v = [](char c) { return c == 'A' || c == 'E' || c == 'I' || c == 'O' || c == 'U'; };
  if (up.size() < 4) return false;
  int vowels = 0, cons_run = 0;
  for (std::size_t i = 0; i < up.size(); ++i) {
    if (is_v(up[i])) {
      ++vowels;
      cons_run = 0;
      if (i > 0 && is_v(up[i - 1])) return false;
    } else if (++cons_run > 2) {
      return false;
    }
  }
  return vowels > 0;
}

}  // namespace detail

/// Reads a number in the given style. Sino-Korean handles sign, grouping
/// commas and a decimal part; native Korean only integers 1..99.
inline std::string expand_number(std::string_view digits, NumberStyle style, const ReadingTables& t,
                                 bool attributive = false) {
  auto parsed = detail::scan_number(digits);
  if (!parsed) throw MalformedNumber(std::string(digits));
  if (style == NumberStyle::NativeKorean) {
    if (parsed->negative || parsed->has_point || parsed->integer.size() > 2) throw MalformedNumber(std::string(digits));
    int n = detail::to_int(parsed->integer);
    return detail::read_native(n, attributive, t);
  }
  std::string out;
  if (parsed->negative) out += t.word_or_throw("sign");
  out += detail::read_sino_integer(parsed->integer, t);
  if (parsed->has_point) {
    out += t.word_or_throw("point");
    out += detail::read_digits(parsed->fraction, t, false);
  }
  return out;
}

inline bool is_number(std::string_view s) { return detail::scan_number(s).has_value(); }

/// Assigns exactly one kind to a non-Korean token. Format grammars are listed
/// in docs/normalization.md.
inline NonKoreanToken classify(std::string_view token, const ReadingTables& t) {
  static const std::regex date_num(R"((\d{1,2})/(\d{1,2})/(\d{2}|\d{4}))");
  static const std::regex date_mon(R"((\d{1,2})-([A-Za-z]{3})-(\d{2}|\d{4}))");
  static const std::regex clock(R"((\d{1,2}):(\d{2}))");
  static const std::regex score(R"(\d+:\d+)");
  static const std::regex phone(R"(\d+(-\d+)+)");
  static const std::regex math(R"(-?\d+(\.\d+)?([-+*x/=]\d+(\.\d+)?)+)");
  static const std::regex upper(R"([A-Z]+)");
  static const std::regex letters(R"([A-Za-z]+)");

  std::string s(token);
  std::smatch m;
  auto kind_of = [&]() -> std::optional<TokenKind> {
    if (std::regex_match(s, m, date_num)) {
      int d = detail::to_int(m[1].str()), mo = detail::to_int(m[2].str());
      if (d >= 1 && d <= 31 && mo >= 1 && mo <= 12) return TokenKind::Date;
    }
    if (std::regex_match(s, m, date_mon)) {
      std::string mon = m[2].str();
      for (auto& c : mon) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      int d = detail::to_int(m[1].str());
      if (t.month_name.count(mon) && d >= 1 && d <= 31) return TokenKind::Date;
    }
    if (std::regex_match(s, m, clock)) {
      if (detail::to_int(m[1].str()) <= 24 && detail::to_int(m[2].str()) <= 59) return TokenKind::Time;
    }
    if (std::regex_match(s, score)) return TokenKind::Score;
    std::size_t ndigits = 0;
    for (char c : s) ndigits += detail::is_digit(c);
    if (std::regex_match(s, phone) && ndigits >= 7) return TokenKind::Phone;
    if (ndigits >= 7 && ndigits == s.size() && s[0] == '0') return TokenKind::Phone;
    if (is_number(s)) return TokenKind::Number;
    if (std::regex_match(s, math)) return TokenKind::MathExpr;
    if (std::regex_match(s, upper)) return detail::pronounceable(s) ? TokenKind::WordAcronym : TokenKind::SpelledAcronym;
    if (std::regex_match(s, letters)) return TokenKind::Abbreviation;
    return std::nullopt;
  };
  auto k = kind_of();
  if (!k) throw Unclassifiable(s);
  return {s, *k};
}

/// Result of expanding one token: either Hangul text, or a request to look
/// the literal surface up in the phonetic dictionary.
struct Expansion {
  std::string hangul;
  bool lexicon_request = false;
};

/// Reads every character on its own: letters by name, digits by digit word,
/// known symbols by their word; anything else is dropped.
inline std::string spell_out(std::string_view token, const ReadingTables& t) {
  std::string out;
  for (char c : token) {
    if (detail::is_digit(c)) {
      out += t.digit.at(c - '0');
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      auto it = t.letter.find(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
      if (it != t.letter.end()) out += it->second;
    } else {
      auto it = t.symbol.find(c);
      if (it != t.symbol.end()) out += it->second;
    }
  }
  return out;
}

inline Expansion expand_token(const NonKoreanToken& tok, const ReadingTables& t) {
  static const std::regex date_num(R"((\d{1,2})/(\d{1,2})/(\d+))");
  static const std::regex date_mon(R"((\d{1,2})-([A-Za-z]{3})-(\d+))");
  static const std::regex clock(R"((\d{1,2}):(\d{2}))");
  static const std::regex score(R"((\d+):(\d+))");

  const std::string& s = tok.surface;
  std::smatch m;
  auto sino = [&](const std::string& d) { return expand_number(d, NumberStyle::SinoKorean, t); };
  auto month_word = [&](int mo) {
    auto it = t.month.find(mo);
    return (it != t.month.end() ? it->second : sino(std::to_string(mo))) + t.unit_or_throw("month");
  };
  auto date = [&](const std::string& day, int mo, const std::string& year) {
    return sino(year) + t.unit_or_throw("year") + month_word(mo) + sino(day) + t.unit_or_throw("day");
  };

  switch (tok.kind) {
    case TokenKind::Number:
      return {sino(s)};
    case TokenKind::Date:
      if (std::regex_match(s, m, date_num)) return {date(m[1].str(), detail::to_int(m[2].str()), m[3].str())};
      if (std::regex_match(s, m, date_mon)) {
        std::string mon = m[2].str();
        for (auto& c : mon) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return {date(m[1].str(), t.month_name.at(mon), m[3].str())};
      }
      break;
    case TokenKind::Time:
      if (std::regex_match(s, m, clock)) {
        int h = detail::to_int(m[1].str()), mi = detail::to_int(m[2].str());
        std::string out = (h == 0 ? sino("0") : detail::read_native(h, true, t)) + t.unit_or_throw("hour");
        if (mi > 0) out += sino(std::to_string(mi)) + t.unit_or_throw("minute");
        return {out};
      }
      break;
    case TokenKind::Score:
      if (std::regex_match(s, m, score)) return {sino(m[1].str()) + t.word_or_throw("versus") + sino(m[2].str())};
      break;
    case TokenKind::Phone:
      return {detail::read_digits(s, t, true)};
    case TokenKind::MathExpr: {
      // a/b alone is a fraction, read denominator first
      static const std::regex fraction(R"((\d+)/(\d+))");
      if (std::regex_match(s, m, fraction)) return {sino(m[2].str()) + t.word_or_throw("fraction") + sino(m[1].str())};
      std::string out;
      std::size_t i = 0;
      bool expect_operand = true;
      while (i < s.size()) {
        if (expect_operand) {
          std::size_t j = i;
          if (s[j] == '-') ++j;
          while (j < s.size() && (detail::is_digit(s[j]) || s[j] == '.')) ++j;
          out += sino(s.substr(i, j - i));
          i = j;
        } else {
          static const std::map<char, std::string> ops{
              {'+', "plus"}, {'-', "minus"}, {'*', "times"}, {'x', "times"}, {'/', "divide"}, {'=', "equals"}};
          out += t.word_or_throw(ops.at(s[i]));
          ++i;
        }
        expect_operand = !expect_operand;
      }
      return {out};
    }
    case TokenKind::SpelledAcronym:
      return {spell_out(s, t)};
    case TokenKind::Abbreviation:
    case TokenKind::WordAcronym:
      return {s, true};
  }
  throw Unclassifiable(s);
}

}  // namespace kg2p
