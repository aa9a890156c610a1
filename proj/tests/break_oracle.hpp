#pragma once

// Brute-force phrase segmentation: try every subset of word boundaries and
// keep those where each break is justified and no justified break was
// skipped. Exactly one subset should survive.

#include <cstddef>
#include <vector>

namespace oracle {

inline std::vector<std::vector<std::size_t>> valid_segmentations(const std::vector<bool>& trigger, std::size_t min_words,
                                                                 std::size_t max_words) {
  const std::size_t n = trigger.size();
  std::vector<std::vector<std::size_t>> found;
  if (n == 0) return found;
  for (unsigned long mask = 0; mask < (1ul << (n - 1)); ++mask) {
    std::vector<std::size_t> ends;
    for (std::size_t w = 0; w + 1 < n; ++w)
      if (mask >> w & 1) ends.push_back(w);
    ends.push_back(n - 1);
    bool ok = true;
    std::size_t start = 0;
    for (auto e : ends) {
      std::size_t len = e - start + 1;
      bool justified = e == n - 1 || (trigger[e] && len >= min_words) || len == max_words;
      if (len > max_words || !justified) ok = false;
      for (std::size_t k = start; k < e && ok; ++k) {
        std::size_t prefix = k - start + 1;
        if ((trigger[k] && prefix >= min_words) || prefix == max_words) ok = false;
      }
      start = e + 1;
      if (!ok) break;
    }
    if (ok) found.push_back(ends);
  }
  return found;
}

}  // namespace oracle
