#pragma once

// Synthetic CCV corpora with known rules. Phonemes are produced by applying
// the planted rules, then a small fraction of boundaries is overwritten with
// a contradicting output.

#include <random>

#include "kg2p/ccv.hpp"

namespace synth {

struct Corpus {
  kg2p::CcvRuleSet planted;
  std::vector<kg2p::AlignedPair> train;
  std::vector<kg2p::AlignedPair> held_out;
  std::size_t boundaries = 0;
  std::size_t noisy = 0;
};

inline kg2p::Syllable random_syllable(std::mt19937& rng) {
  std::uniform_int_distribution<int> cp(0xAC00, 0xD7A3);
  return kg2p::decompose_syllable(static_cast<char32_t>(cp(rng)));
}

inline kg2p::SyllableString random_word(std::mt19937& rng, int min_len = 2, int max_len = 5) {
  std::uniform_int_distribution<int> len(min_len, max_len);
  kg2p::SyllableString w;
  for (int k = len(rng); k > 0; --k) w.push_back(random_syllable(rng));
  return w;
}

inline kg2p::CcvOutput random_output(std::mt19937& rng, const kg2p::CcvContext& avoid) {
  std::uniform_int_distribution<int> fin(-1, kg2p::kFinalCount - 1), ini(0, kg2p::kInitialCount - 1);
  for (;;) {
    int f = fin(rng);
    kg2p::CcvOutput o{f < 0 ? std::nullopt : std::optional(kg2p::final_(f)), kg2p::initial(ini(rng))};
    if (o != kg2p::identity_output(avoid)) return o;
  }
}

inline kg2p::CcvRuleSet random_rules(std::mt19937& rng, std::size_t n) {
  kg2p::CcvRuleSet rules;
  while (rules.size() < n) {
    kg2p::SyllableString pair{random_syllable(rng), random_syllable(rng)};
    auto ctx = kg2p::context_at(pair, 0);
    rules.add({ctx, random_output(rng, ctx)});
  }
  return rules;
}

// A word that contains `ctx` at a random boundary.
inline kg2p::SyllableString word_with(std::mt19937& rng, const kg2p::CcvContext& ctx) {
  auto w = random_word(rng);
  std::uniform_int_distribution<std::size_t> at(0, w.size() - 2);
  auto b = at(rng);
  w[b].final = ctx.final_c;
  w[b + 1].initial = ctx.initial_c;
  w[b + 1].vowel = ctx.vowel;
  return w;
}

inline Corpus make(unsigned seed, std::size_t n_rules = 20, std::size_t per_rule = 6, std::size_t filler = 400,
                   std::size_t held_out = 1000, double noise = 0.008) {
  std::mt19937 rng(seed);
  Corpus c;
  c.planted = random_rules(rng, n_rules);
  std::vector<kg2p::SyllableString> words;
  for (const auto& r : c.planted.rules())
    for (std::size_t k = 0; k < per_rule; ++k) words.push_back(word_with(rng, r.context));
  for (std::size_t k = 0; k < filler; ++k) words.push_back(random_word(rng));
  std::shuffle(words.begin(), words.end(), rng);

  std::bernoulli_distribution flip(noise);
  for (auto& g : words) {
    auto p = kg2p::apply_ccv(g, c.planted);
    for (std::size_t b = 0; b + 1 < g.size(); ++b) {
      ++c.boundaries;
      if (!flip(rng)) continue;
      auto o = random_output(rng, kg2p::context_at(g, b));
      if (o == kg2p::CcvOutput{p[b].final, p[b + 1].initial}) continue;
      p[b].final = o.final_c;
      p[b + 1].initial = o.initial_c;
      ++c.noisy;
    }
    c.train.push_back({g, p});
  }
  for (std::size_t k = 0; k < held_out; ++k) {
    auto g = k % 2 ? random_word(rng) : word_with(rng, c.planted.rules()[k / 2 % n_rules].context);
    c.held_out.push_back({g, kg2p::apply_ccv(g, c.planted)});
  }
  return c;
}

}  // namespace synth
