#pragma once

// Independent Sino-Korean reader used as a test oracle. Works on integers by
// division rather than on digit strings, with its own word lists.

#include <cstdint>
#include <random>
#include <string>

namespace oracle {

inline const char* const kDigit[] = {"영", "일", "이", "삼", "사", "오", "육", "칠", "팔", "구"};
inline const char* const kPlace[] = {"", "십", "백", "천"};
inline const char* const kMyriad[] = {"", "만", "억", "조", "경"};

inline std::string below_myriad(unsigned g) {
  std::string out;
  unsigned pow10[] = {1, 10, 100, 1000};
  for (int p = 3; p >= 0; --p) {
    unsigned d = g / pow10[p] % 10;
    if (!d) continue;
    if (d > 1 || p == 0) out += kDigit[d];
    out += kPlace[p];
  }
  return out;
}

inline std::string sino(std::uint64_t n) {
  if (n == 0) return kDigit[0];
  unsigned groups[6] = {};
  int count = 0;
  while (n) {
    groups[count++] = static_cast<unsigned>(n % 10000);
    n /= 10000;
  }
  std::string out;
  for (int k = count - 1; k >= 0; --k) {
    if (!groups[k]) continue;
    if (!(k == 1 && groups[k] == 1)) out += below_myriad(groups[k]);
    out += kMyriad[k];
  }
  return out;
}

// "[-]digits[.digits]" without grouping commas.
inline std::string read_decimal(const std::string& s) {
  std::string out;
  std::size_t i = 0;
  if (s[0] == '-') {
    out += "마이너스";
    i = 1;
  }
  auto dot = s.find('.');
  std::uint64_t n = 0;
  for (std::size_t k = i; k < (dot == std::string::npos ? s.size() : dot); ++k) n = n * 10 + static_cast<unsigned>(s[k] - '0');
  out += sino(n);
  if (dot != std::string::npos) {
    out += "점";
    for (std::size_t k = dot + 1; k < s.size(); ++k) out += kDigit[s[k] - '0'];
  }
  return out;
}

template <typename Rng>
std::string random_decimal(Rng& rng) {
  std::uniform_int_distribution<int> coin(0, 1), digits(1, 15), frac(1, 4), digit(0, 9);
  std::string s;
  if (coin(rng)) s += '-';
  int len = digits(rng);
  for (int k = 0; k < len; ++k) s += static_cast<char>('0' + digit(rng));
  // no leading zeros except a lone zero
  while (s.size() > 1 && s[s[0] == '-' ? 1 : 0] == '0' && s.size() > (s[0] == '-' ? 2u : 1u)) s.erase(s[0] == '-' ? 1 : 0, 1);
  if (coin(rng) || s[0] != '-') {
    s += '.';
    for (int k = frac(rng); k > 0; --k) s += static_cast<char>('0' + digit(rng));
  }
  return s;
}

}  // namespace oracle
