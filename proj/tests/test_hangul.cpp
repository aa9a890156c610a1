#include <gtest/gtest.h>

#include <random>

#include "kg2p/hangul.hpp"
#include "kg2p/pipeline.hpp"

using namespace kg2p;

namespace {

// Oracle: the syllable block is laid out initial-major, vowel, then final
// (with "no final" first), so walking the three indices in nested order must
// visit every code point from U+AC00 in sequence.
struct Enumerated {
  char32_t cp;
  int i, v, f;
};

std::vector<Enumerated> enumerate_blocks() {
  std::vector<Enumerated> out;
  char32_t cp = 0xAC00;
  for (int i = 0; i < 19; ++i)
    for (int v = 0; v < 21; ++v)
      for (int f = -1; f < 27; ++f) out.push_back({cp++, i, v, f});
  return out;
}

}  // namespace

TEST(Codec, DecomposeMatchesEnumerationOrder) {
  auto all = enumerate_blocks();
  ASSERT_EQ(all.size(), 11172u);
  ASSERT_EQ(all.back().cp, 0xD7A3);
  for (const auto& e : all) {
    auto s = decompose_syllable(e.cp);
    ASSERT_EQ(s.initial, initial(e.i));
    ASSERT_EQ(s.vowel, vowel(e.v));
    if (e.f < 0) ASSERT_FALSE(s.final);
    else ASSERT_EQ(s.final, final_(e.f));
    ASSERT_EQ(compose_syllable(s), e.cp);
  }
}

TEST(Codec, KnownSyllables) {
  auto s = decompose_utf8("각료");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(letter_of(s[0].initial), U'ㄱ');
  EXPECT_EQ(letter_of(*s[0].final), U'ㄱ');
  EXPECT_EQ(letter_of(s[1].initial), U'ㄹ');
  EXPECT_EQ(compose_utf8(s), "각료");
}

TEST(Codec, NonHangulReportsPosition) {
  try {
    decompose_utf8("가a나");
    FAIL();
  } catch (const NonHangulCharacter& e) {
    EXPECT_EQ(e.position(), 1u);
  }
  EXPECT_THROW(decompose_utf8("ㄱ"), NonHangulCharacter);  // a bare compatibility jamo is not a syllable
}

TEST(Codec, PhonemeOnlyFinalIsNotComposable) {
  auto s = deromanize("gabss");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].final, final_(kComposableFinalCount));
  EXPECT_FALSE(is_composable(s[0]));
  EXPECT_THROW(compose(s), InvalidTriple);
}

TEST(Romanization, WordEdgeForms) {
  EXPECT_EQ(romanize(decompose_utf8("각료")), "kag-ryo");
  EXPECT_EQ(romanize(decompose_utf8("방값")), "pang-gabs");
  EXPECT_EQ(romanize(decompose_utf8("듣")), "teut");
  EXPECT_EQ(romanize(decompose_utf8("다섯")), "ta-seos");
  EXPECT_EQ(romanize(decompose_utf8("숯")), "such");
  EXPECT_EQ(romanize(decompose_utf8("과")), "kwa");
  EXPECT_EQ(romanize_compact(deromanize("kang-nyo")), "kangnyo");
}

TEST(Romanization, AliasesParseToSameJamo) {
  EXPECT_EQ(deromanize("kag-ryo"), deromanize("gag-ryo"));
  EXPECT_EQ(deromanize("teud"), deromanize("teut"));
  EXPECT_EQ(deromanize("kka"), deromanize("gga"));
  EXPECT_EQ(deromanize("_a"), deromanize("a"));
  EXPECT_EQ(deromanize("tta"), deromanize("dda"));
}

TEST(Romanization, UnseparatedRunsSplitOnsetFirst) {
  EXPECT_EQ(deromanize("kangnyo"), deromanize("kang-nyo"));
  EXPECT_EQ(deromanize("sudggwa"), deromanize("sud-ggwa"));
  EXPECT_EQ(deromanize("taseot"), deromanize("ta-seot"));
}

TEST(Romanization, UnknownTokenPosition) {
  try {
    deromanize("ka-qa");
    FAIL();
  } catch (const UnknownToken& e) {
    EXPECT_EQ(e.position(), 3u);
  }
  EXPECT_THROW(deromanize("k"), UnknownToken);
  EXPECT_THROW(deromanize("ka--na"), UnknownToken);
}

TEST(Romanization, SingleSyllableRoundTripAllBlocks) {
  for (char32_t cp = 0xAC00; cp <= 0xD7A3; ++cp) {
    SyllableString s{decompose_syllable(cp)};
    ASSERT_EQ(deromanize(romanize(s)), s) << romanize(s);
  }
}

TEST(Romanization, RandomWordsRoundTrip) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> syl(0xAC00, 0xD7A3), len(1, 6);
  for (int t = 0; t < 5000; ++t) {
    SyllableString s;
    for (int k = len(rng); k > 0; --k) s.push_back(decompose_syllable(static_cast<char32_t>(syl(rng))));
    ASSERT_EQ(deromanize(romanize(s)), s) << romanize(s);
  }
}

TEST(Romanization, DataFileMatchesBuiltInTable) {
  EXPECT_NO_THROW(Resources::check_romanization_file(KG2P_DATA_DIR "/romanization.tsv"));
}

TEST(Romanization, TableCoversEveryJamo) {
  std::set<Jamo> seen;
  for (const auto& r : romanization_table()) seen.insert(r.target);
  EXPECT_EQ(seen.size(), static_cast<std::size_t>(kInitialCount + kVowelCount + kFinalCount));
}

TEST(Syllabify, ConsonantBeforeVowelIsInitial) {
  auto items = [](std::string_view text) {
    std::vector<LetterItem> v;
    for (auto j : flatten(deromanize(text))) v.push_back(letter_item(j));
    return v;
  };
  EXPECT_EQ(syllabify(items("kag-ryo")), deromanize("kag-ryo"));
  // two consonants between vowels: first is a final, second an initial
  std::vector<LetterItem> bad{letter_item(vowel(0))};
  EXPECT_FALSE(syllabify(bad));
  std::vector<LetterItem> three{letter_item(initial(0)), letter_item(vowel(0)), letter_item(final_(0)),
                                letter_item(final_(3))};
  EXPECT_FALSE(syllabify(three));
}

TEST(Codec, FlattenKeepsSilence) {
  auto f = flatten(decompose_utf8("이"));
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0], kSilentInitial);
  EXPECT_EQ(label_name(f[0]), "_");
}
