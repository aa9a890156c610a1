#include <gtest/gtest.h>

#include <random>

#include "kg2p/normalize.hpp"
#include "number_oracle.hpp"

using namespace kg2p;

namespace {

const ReadingTables& tables() {
  static const ReadingTables t = ReadingTables::load(KG2P_DATA_DIR "/readings.tsv");
  return t;
}

std::string sino(std::string_view s) { return expand_number(s, NumberStyle::SinoKorean, tables()); }

}  // namespace

TEST(Number, HandPickedSinoReadings) {
  EXPECT_EQ(sino("0"), "영");
  EXPECT_EQ(sino("10"), "십");
  EXPECT_EQ(sino("11"), "십일");
  EXPECT_EQ(sino("21"), "이십일");
  EXPECT_EQ(sino("100"), "백");
  EXPECT_EQ(sino("1000"), "천");
  EXPECT_EQ(sino("10000"), "만");
  EXPECT_EQ(sino("10001"), "만일");
  EXPECT_EQ(sino("20000"), "이만");
  EXPECT_EQ(sino("110000"), "십일만");
  EXPECT_EQ(sino("100000000"), "일억");
  EXPECT_EQ(sino("1,234"), "천이백삼십사");
  EXPECT_EQ(sino("3.14"), "삼점일사");
  EXPECT_EQ(sino("-2.5"), "마이너스이점오");
  EXPECT_EQ(sino("007"), "칠");
}

TEST(Number, MatchesOracleOnSmallRange) {
  for (std::uint64_t n = 0; n <= 20000; ++n) ASSERT_EQ(sino(std::to_string(n)), oracle::sino(n)) << n;
}

TEST(Number, MatchesOracleOnRandomLargeAndDecimal) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 2000; ++t) {
    auto text = oracle::random_decimal(rng);
    ASSERT_EQ(sino(text), oracle::read_decimal(text)) << text;
  }
}

TEST(Number, GroupingCommasMustBeWellFormed) {
  EXPECT_TRUE(is_number("12,345,678"));
  EXPECT_EQ(sino("12,345,678"), sino("12345678"));
  EXPECT_FALSE(is_number("1,23"));
  EXPECT_FALSE(is_number("1234,567"));
  EXPECT_FALSE(is_number("1."));
  EXPECT_FALSE(is_number("-"));
  EXPECT_FALSE(is_number(""));
  EXPECT_THROW(sino("1,23"), MalformedNumber);
}

TEST(Number, NativeReadings) {
  auto native = [](std::string_view s, bool attr) { return expand_number(s, NumberStyle::NativeKorean, tables(), attr); };
  EXPECT_EQ(native("5", false), "다섯");
  EXPECT_EQ(native("5", true), "다섯");
  EXPECT_EQ(native("1", true), "한");
  EXPECT_EQ(native("20", true), "스무");
  EXPECT_EQ(native("20", false), "스물");
  EXPECT_EQ(native("24", true), "스물네");
  EXPECT_EQ(native("99", false), "아흔아홉");
  EXPECT_THROW(native("100", false), MalformedNumber);
  EXPECT_THROW(native("0", false), MalformedNumber);
  EXPECT_THROW(native("2.5", false), MalformedNumber);
}

TEST(Classify, EachKind) {
  auto kind = [](std::string_view s) { return classify(s, tables()).kind; };
  EXPECT_EQ(kind("1,234"), TokenKind::Number);
  EXPECT_EQ(kind("-3.5"), TokenKind::Number);
  EXPECT_EQ(kind("20/1/97"), TokenKind::Date);
  EXPECT_EQ(kind("20-Jan-97"), TokenKind::Date);
  EXPECT_EQ(kind("02/03/04"), TokenKind::Date);
  EXPECT_EQ(kind("3:30"), TokenKind::Time);
  EXPECT_EQ(kind("2:1"), TokenKind::Score);  // minutes need two digits
  EXPECT_EQ(kind("3:75"), TokenKind::Score);
  EXPECT_EQ(kind("31:2"), TokenKind::Score);
  EXPECT_EQ(kind("1+2=3"), TokenKind::MathExpr);
  EXPECT_EQ(kind("1/2"), TokenKind::MathExpr);
  EXPECT_EQ(kind("010-1234-5678"), TokenKind::Phone);
  EXPECT_EQ(kind("0212345678"), TokenKind::Phone);
  EXPECT_EQ(kind("km"), TokenKind::Abbreviation);
  EXPECT_EQ(kind("KBS"), TokenKind::SpelledAcronym);
  EXPECT_EQ(kind("UNESCO"), TokenKind::WordAcronym);
  EXPECT_EQ(kind("NASA"), TokenKind::WordAcronym);
  EXPECT_EQ(kind("HTTP"), TokenKind::SpelledAcronym);
  EXPECT_THROW(classify("@#!", tables()), Unclassifiable);
}

TEST(Expand, DatesTimesScores) {
  auto ex = [](std::string_view s) { return expand_token(classify(s, tables()), tables()).hangul; };
  EXPECT_EQ(ex("20/1/97"), "구십칠년일월이십일");
  EXPECT_EQ(ex("20-Jan-97"), ex("20/1/97"));
  EXPECT_EQ(ex("1/6/2024"), "이천이십사년유월일일");
  EXPECT_EQ(ex("3/10/99"), "구십구년시월삼일");
  EXPECT_EQ(ex("3:30"), "세시삼십분");
  EXPECT_EQ(ex("12:00"), "열두시");
  EXPECT_EQ(ex("3:75"), "삼대칠십오");
  EXPECT_EQ(ex("1/2"), "이분의일");
  EXPECT_EQ(ex("1+2=3"), "일더하기이는삼");
  EXPECT_EQ(ex("6x7=42"), "육곱하기칠는사십이");
  EXPECT_EQ(ex("010-1234"), "공일공일이삼사");
  EXPECT_EQ(ex("KBS"), "케이비에스");
}

TEST(Expand, LexiconRequests) {
  auto e = expand_token(classify("km", tables()), tables());
  EXPECT_TRUE(e.lexicon_request);
  EXPECT_EQ(e.hangul, "km");
  EXPECT_TRUE(expand_token(classify("UNESCO", tables()), tables()).lexicon_request);
}

TEST(Expand, SpellOutDropsUnknownSymbols) {
  EXPECT_EQ(spell_out("A1%", tables()), "에이일퍼센트");
  EXPECT_EQ(spell_out("!?", tables()), "");
}

TEST(Readings, LoaderRejectsBadRows) {
  auto path = testing::TempDir() + "/bad_readings.tsv";
  {
    std::ofstream(path) << "#g2p-v1\ndigit\t0\t영\ndigit\tx\t일\n";
  }
  try {
    ReadingTables::load(path);
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  {
    std::ofstream(path) << "digit\t0\t영\n";
  }
  EXPECT_THROW(ReadingTables::load(path), ResourceError);
}
