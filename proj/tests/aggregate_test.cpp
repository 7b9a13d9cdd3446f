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

#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "partisan/aggregate.hpp"
#include "partisan/error.hpp"
#include "testutil.hpp"

namespace partisan {
namespace {

using testing::TempDir;
using testing::write_file;

EntityMentionRow row(std::string name, Party party, int sentiment,
                     WindowLabel window = WindowLabel::kBaseline,
                     std::string user = "u") {
  return EntityMentionRow{std::move(name), "PERSON", std::move(user), sentiment,
                          party, window};
}

std::vector<EntityMentionRow> random_rows(std::mt19937& rng, std::size_t n,
                                          bool both_windows) {
  static const char* names[] = {"alpha", "beta", "gamma", "delta", "new york"};
  std::vector<EntityMentionRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back(row(names[rng() % 5], rng() % 2 ? Party::kDemocrat : Party::kRepublican,
                       static_cast<int>(rng() % 5),
                       both_windows && rng() % 2 ? WindowLabel::kCrisis
                                                 : WindowLabel::kBaseline,
                       "u" + std::to_string(rng() % 9)));
  }
  return rows;
}

TEST(NormalizeEntityName, Examples) {
  EXPECT_EQ(normalize_entity_name("  New   York "), "new york");
  EXPECT_EQ(normalize_entity_name("DONALD\tTRUMP"), "donald trump");
  EXPECT_EQ(normalize_entity_name("Zoë"), "zoë");
  EXPECT_EQ(normalize_entity_name("   "), std::nullopt);
  EXPECT_EQ(normalize_entity_name(""), std::nullopt);
}

TEST(NormalizeEntityName, IdempotentProperty) {
  std::mt19937 rng(3);
  const char alphabet[] = "aB \t\nZ";
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    for (int k = 0, n = static_cast<int>(rng() % 10); k < n; ++k)
      s += alphabet[rng() % 6];
    auto once = normalize_entity_name(s);
    if (once) EXPECT_EQ(normalize_entity_name(*once), once);
  }
}

TEST(EmitMentionRows, Examples) {
  AnnotatedTweet a{"t1", "u1",
                   {{"I love X and Y.", 4, {{"X", "MISC"}, {"Y", "PERSON"}}},
                    {"I hate x.", 0, {{"x", "MISC"}}},
                    {"Nothing here.", 2, {}}}};
  auto rows = emit_mention_rows(a, PartyLabel::kDemocrat, WindowLabel::kCrisis);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (EntityMentionRow{"x", "MISC", "u1", 4, Party::kDemocrat,
                                       WindowLabel::kCrisis}));
  EXPECT_EQ(rows[1].entity_name, "y");
  EXPECT_EQ(rows[1].sentiment, 4);
  EXPECT_EQ(rows[2].entity_name, "x");
  EXPECT_EQ(rows[2].sentiment, 0);

  EXPECT_TRUE(emit_mention_rows(a, PartyLabel::kUnaligned, WindowLabel::kCrisis).empty());
  EXPECT_TRUE(emit_mention_rows(a, PartyLabel::kRepublican, WindowLabel::kOutside).empty());
}

TEST(EmitMentionRows, CountsUnnameableMentions) {
  AnnotatedTweet a{"t1", "u1", {{"?", 3, {{"  ", "MISC"}, {"Bob", "PERSON"}}}}};
  std::size_t dropped = 0;
  auto rows = emit_mention_rows(a, PartyLabel::kRepublican, WindowLabel::kBaseline,
                                &dropped);
  EXPECT_EQ(rows.size(), 1u);
  EXPECT_EQ(dropped, 1u);
}

TEST(ReduceToInstances, Examples) {
  std::vector<EntityMentionRow> rows = {
      row("x", Party::kDemocrat, 4), row("x", Party::kDemocrat, 3),
      row("x", Party::kRepublican, 1), row("y", Party::kRepublican, 2)};
  auto t = reduce_to_instances(rows);
  ASSERT_EQ(t.entities.size(), 2u);
  EXPECT_EQ(t.entities["x"].democrat, (PartyTally{7, 2}));
  EXPECT_EQ(t.entities["x"].republican, (PartyTally{1, 1}));
  EXPECT_DOUBLE_EQ(t.entities["x"].democrat.mean(), 3.5);
  EXPECT_EQ(t.entities["y"].democrat.mention_count, 0u);
  EXPECT_TRUE(std::isnan(t.entities["y"].democrat.mean()));
  EXPECT_EQ(t.total_mentions(Party::kDemocrat), 2u);
  EXPECT_EQ(t.total_mentions(Party::kRepublican), 2u);

  EXPECT_TRUE(reduce_to_instances({}).empty());

  rows.push_back(row("x", Party::kDemocrat, 1, WindowLabel::kCrisis));
  EXPECT_THROW(reduce_to_instances(rows), ContractViolation);
}

TEST(ReduceByWindow, RoutesRows) {
  std::vector<EntityMentionRow> rows = {row("x", Party::kDemocrat, 4),
                                        row("x", Party::kRepublican, 0, WindowLabel::kCrisis)};
  auto w = reduce_by_window(rows);
  EXPECT_EQ(w.baseline.total_mentions(Party::kDemocrat), 1u);
  EXPECT_EQ(w.baseline.total_mentions(Party::kRepublican), 0u);
  EXPECT_EQ(w.crisis.total_mentions(Party::kRepublican), 1u);
  rows.push_back(row("x", Party::kDemocrat, 1, WindowLabel::kOutside));
  EXPECT_THROW(reduce_by_window(rows), ContractViolation);
}

TEST(MergeAggregates, Example) {
  auto a = reduce_to_instances(std::vector{row("x", Party::kDemocrat, 4)});
  auto b = reduce_to_instances(
      std::vector{row("x", Party::kDemocrat, 2), row("y", Party::kRepublican, 1)});
  auto m = merge_aggregates(a, b);
  EXPECT_EQ(m.entities["x"].democrat, (PartyTally{6, 2}));
  EXPECT_EQ(m.entities["y"].republican, (PartyTally{1, 1}));
}

// Counts are conserved; reduction is order-independent and commutes with
// any split into chunks.
TEST(Aggregate, ConservationShuffleAndSplitProperty) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto rows = random_rows(rng, rng() % 200, true);
    auto whole = reduce_by_window(rows);

    std::uint64_t mentions = 0;
    for (auto w : {WindowLabel::kBaseline, WindowLabel::kCrisis})
      for (auto p : {Party::kDemocrat, Party::kRepublican})
        mentions += whole.for_window(w).total_mentions(p);
    EXPECT_EQ(mentions, rows.size());

    auto shuffled = rows;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(reduce_by_window(shuffled), whole);

    const std::size_t cut1 = rows.empty() ? 0 : rng() % (rows.size() + 1);
    const std::size_t cut2 = cut1 + (rows.size() - cut1) / 2;
    std::span<const EntityMentionRow> all(rows);
    auto a = reduce_by_window(all.subspan(0, cut1));
    auto b = reduce_by_window(all.subspan(cut1, cut2 - cut1));
    auto c = reduce_by_window(all.subspan(cut2));
    EXPECT_EQ(merge_aggregates(merge_aggregates(a, b), c), whole);
    EXPECT_EQ(merge_aggregates(a, merge_aggregates(b, c)), whole);
    EXPECT_EQ(merge_aggregates(c, merge_aggregates(a, b)), whole);
  }
}

TEST(MentionsCsv, RoundTripProperty) {
  TempDir dir;
  std::mt19937 rng(5);
  auto rows = random_rows(rng, 300, true);
  rows.push_back(EntityMentionRow{"a, \"quoted\" name", "MISC", "user,1", 0,
                                  Party::kRepublican, WindowLabel::kCrisis});
  std::ostringstream out;
  write_mentions_header(out);
  for (const auto& r : rows) write_mention_row(out, r);
  write_file(dir / "m.csv", out.str());
  EXPECT_EQ(read_mentions_csv(dir / "m.csv"), rows);
}

TEST(MentionsCsv, Format) {
  std::ostringstream out;
  write_mentions_header(out);
  write_mention_row(out, row("new york", Party::kRepublican, 3, WindowLabel::kCrisis));
  EXPECT_EQ(out.str(),
            "entity,entity_type,user_id,sentiment,party,window\n"
            "new york,PERSON,u,3,Republican,crisis\n");
}

TEST(MentionsCsv, RejectsBadRows) {
  TempDir dir;
  const std::string header = "entity,entity_type,user_id,sentiment,party,window\n";
  for (const char* bad : {"x,PERSON,u,5,Democrat,baseline\n",
                          "x,PERSON,u,2,Unaligned,baseline\n",
                          "x,PERSON,u,2,Democrat,outside\n",
                          "x,PERSON,u,2,Democrat\n",
                          ",PERSON,u,2,Democrat,crisis\n"}) {
    write_file(dir / "m.csv", header + bad);
    EXPECT_THROW(read_mentions_csv(dir / "m.csv"), DataError) << bad;
  }
  write_file(dir / "m.csv", "wrong,header\n");
  EXPECT_THROW(read_mentions_csv(dir / "m.csv"), DataError);
}

TEST(AggregateCsv, FormatAndRoundTrip) {
  TempDir dir;
  auto t = reduce_to_instances(std::vector{
      row("x", Party::kDemocrat, 4), row("x", Party::kDemocrat, 3),
      row("x", Party::kRepublican, 1), row("y, z", Party::kRepublican, 2)});
  std::ostringstream out;
  write_aggregate_csv(out, t);
  EXPECT_EQ(out.str(),
            "entity,party,sentiment_sum,mention_count,mean_sentiment\n"
            "x,Democrat,7,2,3.500000\n"
            "x,Republican,1,1,1.000000\n"
            "\"y, z\",Republican,2,1,2.000000\n");
  write_file(dir / "a.csv", out.str());
  EXPECT_EQ(read_aggregate_csv(dir / "a.csv"), t);
}

TEST(AggregateCsv, RejectsInconsistentRows) {
  TempDir dir;
  const std::string header = "entity,party,sentiment_sum,mention_count,mean_sentiment\n";
  for (const char* bad : {"x,Democrat,9,2,4.5\n", "x,Democrat,1,0,0\n",
                          "x,Democrat,1,1,1\nx,Democrat,1,1,1\n",
                          "x,Other,1,1,1\n", "x,Democrat,-1,1,1\n"}) {
    write_file(dir / "a.csv", header + bad);
    EXPECT_THROW(read_aggregate_csv(dir / "a.csv"), DataError) << bad;
  }
}

}  // namespace
}  // namespace partisan
