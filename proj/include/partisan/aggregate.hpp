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

#ifndef PARTISAN_AGGREGATE_HPP_
#define PARTISAN_AGGREGATE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "partisan/affiliation.hpp"
#include "partisan/annotator.hpp"
#include "partisan/corpus.hpp"

namespace partisan {

// One entity occurrence in one sentence of one aligned, in-window tweet.
struct EntityMentionRow {
  std::string entity_name;  // normalized
  std::string entity_type;
  std::string user_id;
  int sentiment = kNeutralSentiment;
  Party party = Party::kDemocrat;
  WindowLabel window = WindowLabel::kBaseline;

  bool operator==(const EntityMentionRow&) const = default;
};

// Lowercase, trim, collapse whitespace runs. nullopt if nothing remains.
std::optional<std::string> normalize_entity_name(std::string_view raw);

// One row per retained entity per sentence, each carrying its sentence's
// sentiment. Empty for Unaligned authors or Outside timestamps. Mentions
// whose names normalize to nothing are skipped and counted in `dropped`.
std::vector<EntityMentionRow> emit_mention_rows(const AnnotatedTweet& a,
                                                PartyLabel party,
                                                WindowLabel window,
                                                std::size_t* dropped = nullptr);

// Exact per-party sum and count; the mean is derived, never stored.
struct PartyTally {
  std::uint64_t sentiment_sum = 0;
  std::uint64_t mention_count = 0;

  void add(int sentiment) {
    sentiment_sum += static_cast<std::uint64_t>(sentiment);
    ++mention_count;
  }
  PartyTally& operator+=(const PartyTally& o) {
    sentiment_sum += o.sentiment_sum;
    mention_count += o.mention_count;
    return *this;
  }
  // Undefined (NaN) when empty.
  double mean() const;

  bool operator==(const PartyTally&) const = default;
};

struct EntityAggregate {
  PartyTally democrat;
  PartyTally republican;

  PartyTally& tally(Party p) {
    return p == Party::kDemocrat ? democrat : republican;
  }
  const PartyTally& tally(Party p) const {
    return p == Party::kDemocrat ? democrat : republican;
  }

  bool operator==(const EntityAggregate&) const = default;
};

// Normalized entity name -> per-party tallies, for one (event, window).
struct AggregateTable {
  std::map<std::string, EntityAggregate> entities;

  void add(const EntityMentionRow& row) {
    entities[row.entity_name].tally(row.party).add(row.sentiment);
  }
  std::uint64_t total_mentions(Party p) const;
  bool empty() const { return entities.empty(); }

  bool operator==(const AggregateTable&) const = default;
};

// All rows must share one window, else ContractViolation.
AggregateTable reduce_to_instances(std::span<const EntityMentionRow> rows);

struct WindowedTables {
  AggregateTable baseline;
  AggregateTable crisis;

  AggregateTable& for_window(WindowLabel w);
  bool operator==(const WindowedTables&) const = default;
};

// Routes each row to its window's table. Outside rows are a ContractViolation.
WindowedTables reduce_by_window(std::span<const EntityMentionRow> rows);

AggregateTable merge_aggregates(const AggregateTable& a, const AggregateTable& b);
WindowedTables merge_aggregates(const WindowedTables& a, const WindowedTables& b);

// Mention CSV: `entity,entity_type,user_id,sentiment,party,window`.
void write_mentions_header(std::ostream& out);
void write_mention_row(std::ostream& out, const EntityMentionRow& row);
std::vector<EntityMentionRow> read_mentions_csv(const std::filesystem::path& path);

// Aggregate CSV: `entity,party,sentiment_sum,mention_count,mean_sentiment`,
// one row per entity per party with at least one mention.
void write_aggregate_csv(std::ostream& out, const AggregateTable& table);
AggregateTable read_aggregate_csv(const std::filesystem::path& path);

}  // namespace partisan

#endif  // PARTISAN_AGGREGATE_HPP_
