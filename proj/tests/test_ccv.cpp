#include <gtest/gtest.h>

#include <fstream>

#include "ccv_synth.hpp"
#include "kg2p/ccv.hpp"

using namespace kg2p;

namespace {

AlignedPair pair(std::string_view g, std::string_view p) { return {deromanize(g), deromanize(p)}; }

CcvRule rule(std::string_view g, std::string_view p) {
  auto gs = deromanize(g), ps = deromanize(p);
  return {context_at(gs, 0), {ps[0].final, ps[1].initial}};
}

std::vector<AlignedPair> copies(std::string_view g, std::string_view p, int n) {
  return std::vector<AlignedPair>(static_cast<std::size_t>(n), pair(g, p));
}

}  // namespace

TEST(ApplyCcv, PlantedKagRyo) {
  CcvRuleSet rules;
  rules.add(rule("kag-ryo", "kang-nyo"));
  EXPECT_EQ(romanize(apply_ccv(deromanize("kag-ryo"), rules)), "kang-nyo");
  EXPECT_EQ(romanize(apply_ccv(deromanize("ka-na"), {})), "ka-na");
  EXPECT_EQ(apply_ccv(deromanize("kag"), rules), deromanize("kag"));
}

TEST(ApplyCcv, ContextsComeFromInputNotOutput) {
  // g|r -> ng|n, then n|r -> l|r would fire on the rewritten n if the pass
  // were sequential; it must not.
  CcvRuleSet rules;
  rules.add(rule("kag-ryo", "kang-nyo"));
  rules.add(rule("an-ryo", "al-ryo"));
  EXPECT_EQ(romanize(apply_ccv(deromanize("kag-ryo-ryo"), rules)), "kang-nyo-ryo");
}

TEST(ApplyCcv, LockedBoundaryJamoAreCopied) {
  CcvRuleSet rules;
  rules.add(rule("kag-ryo", "kang-nyo"));
  auto g = deromanize("kag-ryo");
  CcvLocks right_locked{{false, true}, {}};
  CcvLocks left_locked{{}, {true, false}};
  EXPECT_EQ(apply_ccv(g, rules, right_locked), g);
  EXPECT_EQ(apply_ccv(g, rules, left_locked), g);
  std::vector<std::size_t> fired;
  apply_ccv(g, rules, {}, &fired);
  EXPECT_EQ(fired, (std::vector<std::size_t>{0}));
}

TEST(ApplyCcv, VowelsPreserved) {
  auto c = synth::make(1, 40, 2, 50, 0);
  std::mt19937 rng(2);
  for (int t = 0; t < 2000; ++t) {
    auto w = t % 2 ? synth::random_word(rng, 1, 6) : synth::word_with(rng, c.planted.rules()[t % 40].context);
    auto out = apply_ccv(w, c.planted);
    ASSERT_EQ(vowels_of(out), vowels_of(w));
    ASSERT_EQ(out.front().initial, w.front().initial);
    ASSERT_EQ(out.back().final, w.back().final);
  }
}

TEST(ApplyCcv, Locality) {
  auto c = synth::make(3, 60, 2, 50, 0);
  std::mt19937 rng(4);
  for (int t = 0; t < 2000; ++t) {
    auto w = synth::word_with(rng, c.planted.rules()[t % 60].context);
    if (w.size() < 3) w.insert(w.begin(), synth::random_syllable(rng));
    std::uniform_int_distribution<std::size_t> at(1, w.size() - 2);
    auto i = at(rng);
    auto out = apply_ccv(w, c.planted);
    // mutate syllable i-1 entirely: initial of i+1 stays put
    auto m = w;
    m[i - 1] = synth::random_syllable(rng);
    ASSERT_EQ(apply_ccv(m, c.planted)[i + 1].initial, out[i + 1].initial);
    // mutate everything except final_i, initial_{i+1}, vowel_{i+1}: final_i stays put
    auto m2 = w;
    auto fresh = synth::random_syllable(rng);
    m2[i].initial = fresh.initial;
    m2[i].vowel = fresh.vowel;
    m2[i - 1] = synth::random_syllable(rng);
    if (i + 2 < m2.size()) m2[i + 2] = synth::random_syllable(rng);
    ASSERT_EQ(apply_ccv(m2, c.planted)[i].final, out[i].final);
  }
}

TEST(LearnCcv, RecoversPlantedRule) {
  auto res = learn_ccv(copies("kag-ryo", "kang-nyo", 10));
  ASSERT_EQ(res.rules.size(), 1u);
  EXPECT_EQ(res.rules.rules()[0], rule("kag-ryo", "kang-nyo"));
  EXPECT_EQ(res.observations, 10u);
}

TEST(LearnCcv, MajorityWins) {
  auto corpus = copies("kag-ryo", "kang-nyo", 3);
  for (auto& p : copies("kag-ryo", "kag-nyo", 2)) corpus.push_back(p);
  auto res = learn_ccv(corpus);
  ASSERT_EQ(res.rules.size(), 1u);
  EXPECT_EQ(res.rules.rules()[0], rule("kag-ryo", "kang-nyo"));
}

TEST(LearnCcv, TiesPreferIdentityThenSmallestOutput) {
  auto corpus = copies("kag-ryo", "kang-nyo", 2);
  for (auto& p : copies("kag-ryo", "kag-ryo", 2)) corpus.push_back(p);
  EXPECT_EQ(learn_ccv(corpus).rules.size(), 0u);

  auto tie = copies("kag-ryo", "kang-nyo", 2);
  for (auto& p : copies("kag-ryo", "kak-kyo", 2)) tie.push_back(p);
  auto res = learn_ccv(tie);
  ASSERT_EQ(res.rules.size(), 1u);
  auto a = rule("kag-ryo", "kang-nyo").output, b = rule("kag-ryo", "kak-kyo").output;
  EXPECT_EQ(res.rules.rules()[0].output, std::min(a, b));
}

TEST(LearnCcv, IdentityCorpusLearnsNothing) {
  std::mt19937 rng(9);
  std::vector<AlignedPair> corpus;
  for (int k = 0; k < 200; ++k) {
    auto w = synth::random_word(rng);
    corpus.push_back({w, w});
  }
  auto res = learn_ccv(corpus);
  EXPECT_EQ(res.rules.size(), 0u);
  for (const auto& p : corpus) EXPECT_EQ(apply_ccv(p.graphemes, res.rules), p.phonemes);
}

TEST(LearnCcv, MinCountFilters) {
  auto corpus = copies("kag-ryo", "kang-nyo", 2);
  EXPECT_EQ(learn_ccv(corpus, 2).rules.size(), 1u);
  EXPECT_EQ(learn_ccv(corpus, 3).rules.size(), 0u);
}

TEST(LearnCcv, MisalignedPairsAreReportedAndSkipped) {
  std::vector<AlignedPair> corpus{pair("kag-ryo", "kang-nyo"), pair("kag-ryo", "kang-nya"), pair("kag", "ka-ga")};
  auto res = learn_ccv(corpus);
  EXPECT_EQ(res.misaligned, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(res.rules.size(), 1u);
}

TEST(LearnCcv, SyntheticRecovery) {
  auto c = synth::make(20);
  auto res = learn_ccv(c.train);
  for (const auto& r : c.planted.rules()) {
    auto id = res.rules.find(r.context);
    ASSERT_TRUE(id) << format_rule(r);
    EXPECT_EQ(res.rules.rules()[*id].output, r.output) << format_rule(r);
  }
}

TEST(Coverage, PlantedCorpusHasNoExceptions) {
  auto corpus = copies("kag-ryo", "kang-nyo", 4);
  auto learned = learn_ccv(corpus);
  auto cov = coverage_report(learned.rules, corpus);
  EXPECT_TRUE(cov.exceptions.empty());
  EXPECT_EQ(cov.boundaries, 4u);
  EXPECT_DOUBLE_EQ(cov.accuracy(), 1.0);
}

TEST(Coverage, ContradictionIsListed) {
  auto corpus = copies("kag-ryo", "kang-nyo", 4);
  corpus.push_back(pair("ta-kag-ryo", "ta-kag-ryo"));
  auto learned = learn_ccv(corpus);
  auto cov = coverage_report(learned.rules, corpus);
  ASSERT_EQ(cov.exceptions.size(), 1u);
  EXPECT_EQ(cov.exceptions[0].sentence, 4u);
  EXPECT_EQ(cov.exceptions[0].boundary, 1u);
  EXPECT_EQ(cov.exceptions[0].observed, identity_output(cov.exceptions[0].context));
}

TEST(Coverage, EmptyCorpus) {
  auto cov = coverage_report({}, {});
  EXPECT_TRUE(cov.exceptions.empty());
  EXPECT_TRUE(cov.per_context.empty());
  EXPECT_EQ(cov.boundaries, 0u);
}

TEST(RuleFile, SaveLoadRoundTrip) {
  auto c = synth::make(7, 30, 1, 0, 0);
  auto path = testing::TempDir() + "/rules.ccv";
  c.planted.save(path);
  auto back = CcvRuleSet::load(path);
  ASSERT_EQ(back.size(), c.planted.size());
  for (const auto& r : c.planted.rules()) {
    auto id = back.find(r.context);
    ASSERT_TRUE(id);
    EXPECT_EQ(back.rules()[*id], r);
  }
}

TEST(RuleFile, ShippedRulesLoadAndRejectDuplicates) {
  auto rules = CcvRuleSet::load(KG2P_DATA_DIR "/ccv.rules");
  EXPECT_GT(rules.size(), 0u);
  EXPECT_EQ(romanize(apply_ccv(deromanize("kag-ryo"), rules)), "kang-nyo");
  auto path = testing::TempDir() + "/dup.ccv";
  std::ofstream(path) << "#g2p-v1\ng r yo\tng n\ng r yo\tg n\n";
  try {
    CcvRuleSet::load(path);
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(RuleFile, TrainingCorpusShippedAligns) {
  auto corpus = load_training_corpus(KG2P_DATA_DIR "/ccv_train.tsv");
  auto res = learn_ccv(corpus);
  EXPECT_TRUE(res.misaligned.empty());
  EXPECT_DOUBLE_EQ(coverage_report(res.rules, corpus).accuracy(), 1.0);
}
