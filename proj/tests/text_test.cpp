// Copyright 2026 The Partisan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "partisan/csv.hpp"
#include "partisan/error.hpp"
#include "partisan/text.hpp"
#include "partisan/timeutil.hpp"

namespace partisan {
namespace {

TEST(Text, LowercasesAsciiAndCommonScripts) {
  EXPECT_EQ(text::to_lower("Donald TRUMP"), "donald trump");
  EXPECT_EQ(text::to_lower("ÉCOLE Zürich"), "école zürich");
  EXPECT_EQ(text::to_lower("ŁÓDŹ"), "łódź");
  EXPECT_EQ(text::to_lower("ΑΘΗΝΑ"), "αθηνα");
  EXPECT_EQ(text::to_lower("МОСКВА"), "москва");
  // Unmapped code points and stray bytes pass through.
  EXPECT_EQ(text::to_lower("東京 \xff"), "東京 \xff");
}

TEST(Text, CollapseWhitespace) {
  EXPECT_EQ(text::collapse_whitespace("  NEW \t  YORK \n"), "NEW YORK");
  EXPECT_EQ(text::collapse_whitespace("   "), "");
}

TEST(Text, TokenizeSplitsOnNonAlphanumeric) {
  auto tokens = text::tokenize("I love-it! Café #2020");
  ASSERT_EQ(tokens.size(), 5u);
  EXPECT_EQ(tokens[0].lower, "i");
  EXPECT_EQ(tokens[1].lower, "love");
  EXPECT_EQ(tokens[2].lower, "it");
  EXPECT_EQ(tokens[3].lower, "café");
  EXPECT_EQ(tokens[4].lower, "2020");
  EXPECT_EQ(tokens[1].begin, 2u);
  EXPECT_EQ(tokens[1].end, 6u);
  EXPECT_TRUE(text::tokenize("").empty());
  EXPECT_TRUE(text::tokenize("... !!").empty());
}

TEST(Time, ParsesRfc3339) {
  auto t = parse_rfc3339("2020-02-01T00:00:00Z");
  ASSERT_TRUE(t);
  EXPECT_EQ(t->time_since_epoch().count(), 1580515200);
  auto offset = parse_rfc3339("2020-02-01T01:30:00.75+01:30");
  ASSERT_TRUE(offset);
  EXPECT_EQ(*offset, *t);
  EXPECT_EQ(format_rfc3339(*t), "2020-02-01T00:00:00Z");
}

TEST(Time, RejectsMalformed) {
  for (const char* bad :
       {"", "2020-02-01", "2020-02-30T00:00:00Z", "2020-02-01T24:00:00Z",
        "2020-02-01T00:00:00", "2020-02-01 00:00:00Z", "2020-02-01T00:00:00Zjunk",
        "2020-02-01T00:00:00.Z"}) {
    EXPECT_FALSE(parse_rfc3339(bad)) << bad;
  }
}

TEST(Time, BareDateIsUtcMidnight) {
  auto d = parse_date_or_rfc3339("2020-02-21");
  ASSERT_TRUE(d);
  EXPECT_EQ(format_rfc3339(*d), "2020-02-21T00:00:00Z");
  EXPECT_FALSE(parse_date_or_rfc3339("2020-13-01"));
}

TEST(Csv, EscapesOnlyWhenNeeded) {
  EXPECT_EQ(csv::escape("plain"), "plain");
  EXPECT_EQ(csv::escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv::escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv::escape("two\nlines"), "\"two\nlines\"");
}

// Any field list written by write_row is read back unchanged.
TEST(Csv, RoundTripProperty) {
  std::mt19937 rng(11);
  const std::string alphabet = "ab ,\"\n\r\txyz";
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::vector<std::string>> rows(1 + rng() % 4);
    std::ostringstream out;
    for (auto& row : rows) {
      row.resize(1 + rng() % 5);
      for (auto& f : row) {
        auto len = rng() % 6;
        for (unsigned i = 0; i < len; ++i) f.push_back(alphabet[rng() % alphabet.size()]);
      }
      csv::write_row(out, row);
    }
    std::istringstream in(out.str());
    csv::Reader reader(in, "mem");
    std::vector<std::string> got;
    for (const auto& row : rows) {
      ASSERT_TRUE(reader.next(got));
      EXPECT_EQ(got, row);
    }
    EXPECT_FALSE(reader.next(got));
  }
}

TEST(Csv, ReportsUnterminatedQuote) {
  std::istringstream in("a,\"open\nstill open");
  csv::Reader reader(in, "bad.csv");
  std::vector<std::string> f;
  EXPECT_THROW(reader.next(f), LineError);
}

}  // namespace
}  // namespace partisan
