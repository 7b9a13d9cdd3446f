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

#ifndef PARTISAN_POLARIMETRY_HPP_
#define PARTISAN_POLARIMETRY_HPP_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "partisan/aggregate.hpp"
#include "partisan/corpus.hpp"

namespace partisan {

// Sentiment differences are divided by the number of sentiment classes (5),
// so polarization never exceeds 4 / 5.
inline constexpr double kPolarizationDivisor = 5.0;
inline constexpr double kMaxPolarization = 0.8;

struct EntityPolarity {
  std::string entity_name;
  double p = 0.0;
  std::uint64_t weight = 0;  // n_d + n_r

  bool operator==(const EntityPolarity&) const = default;
};

struct CorpusPolarization {
  double p_total = 0.0;
  std::size_t entity_count = 0;
  std::uint64_t total_weight = 0;

  bool operator==(const CorpusPolarization&) const = default;
};

// Entities with at least one mention from each party, sorted by name.
std::vector<std::string> joint_entities(const AggregateTable& table);

// |s_d - s_r| / 5. ContractViolation unless both means lie in [0, 4].
double entity_polarization(double s_d, double s_r);

// Polarity of every joint entity, in name order.
std::vector<EntityPolarity> entity_polarities(const AggregateTable& table);

// Mention-weighted mean of p. NoJointEntitiesError on an empty list.
CorpusPolarization corpus_polarization(std::span<const EntityPolarity> polarities);

// Sum of sentiment / sum of mentions for `party` over every entity in the
// table. DataError when the party has no mentions.
double party_average_sentiment(const AggregateTable& table, Party party);

struct WindowVolumes {
  std::uint64_t baseline_tweets = 0;
  std::uint64_t crisis_tweets = 0;

  bool operator==(const WindowVolumes&) const = default;
};

struct WindowSummary {
  double avg_dem_sentiment = 0.0;
  double avg_rep_sentiment = 0.0;
  std::uint64_t tweet_volume = 0;
  std::size_t entity_count = 0;  // distinct entities in the table
  CorpusPolarization polarization;
  std::vector<EntityPolarity> entities;
};

struct PolarizationReport {
  std::string event_name;
  WindowSummary baseline;
  WindowSummary crisis;
  double delta_pp = 0.0;  // (crisis - baseline) p_total, percentage points
};

// Throws NoJointEntitiesError naming the window that has none.
PolarizationReport build_report(const AggregateTable& baseline,
                                const AggregateTable& crisis,
                                const EventWindows& windows,
                                const WindowVolumes& volumes);

// Fixed-point rendering, ties rounded away from zero. Values within 1e-9
// (relative) of a tie count as ties.
std::string format_fixed_half_up(double value, int decimals);
// 0.021 -> "2.1%"
std::string format_percent(double fraction);
// 4.8 -> "+4.8pp", -1.25 -> "-1.3pp", 0 -> "0.0pp"
std::string format_delta_pp(double pp);

// `event,avg_dem_baseline,avg_dem_crisis,avg_rep_baseline,avg_rep_crisis,
//  polarization_baseline_pct,polarization_crisis_pct,delta_pp`
void write_report_csv(std::ostream& out, const PolarizationReport& r);
// `entity,p,weight,window`
void write_entities_csv(std::ostream& out, const PolarizationReport& r);
void write_report_json(std::ostream& out, const PolarizationReport& r);
void write_report_table(std::ostream& out, const PolarizationReport& r);

}  // namespace partisan

#endif  // PARTISAN_POLARIMETRY_HPP_
