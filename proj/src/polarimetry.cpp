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

#include "partisan/polarimetry.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include <json.hpp>

#include "partisan/csv.hpp"
#include "partisan/error.hpp"

namespace partisan {

std::vector<std::string> joint_entities(const AggregateTable& table) {
  std::vector<std::string> out;
  for (const auto& [name, agg] : table.entities) {
    if (agg.democrat.mention_count > 0 && agg.republican.mention_count > 0) {
      out.push_back(name);
    }
  }
  return out;
}

double entity_polarization(double s_d, double s_r) {
  auto in_range = [](double s) {
    return s >= kMinSentiment && s <= kMaxSentiment;  // false for NaN
  };
  if (!in_range(s_d) || !in_range(s_r)) {
    throw ContractViolation(
        fmt::format("mean sentiments ({}, {}) outside [0, 4]", s_d, s_r));
  }
  return std::abs(s_d - s_r) / kPolarizationDivisor;
}

std::vector<EntityPolarity> entity_polarities(const AggregateTable& table) {
  std::vector<EntityPolarity> out;
  for (const auto& [name, agg] : table.entities) {
    if (agg.democrat.mention_count == 0 || agg.republican.mention_count == 0) {
      continue;
    }
    out.push_back({name,
                   entity_polarization(agg.democrat.mean(), agg.republican.mean()),
                   agg.democrat.mention_count + agg.republican.mention_count});
  }
  return out;
}

CorpusPolarization corpus_polarization(
    std::span<const EntityPolarity> polarities) {
  if (polarities.empty()) {
    throw NoJointEntitiesError("no jointly-mentioned entities");
  }
  long double numerator = 0;
  std::uint64_t total_weight = 0;
  double lo = polarities.front().p;
  double hi = lo;
  for (const auto& e : polarities) {
    if (e.weight == 0) throw ContractViolation("entity with zero weight");
    numerator += static_cast<long double>(e.p) * e.weight;
    total_weight += e.weight;
    lo = std::min(lo, e.p);
    hi = std::max(hi, e.p);
  }
  auto p_total = static_cast<double>(numerator / total_weight);
  // A weighted mean lies between its extremes; rounding must not break that.
  p_total = std::clamp(p_total, lo, hi);
  return {p_total, polarities.size(), total_weight};
}

double party_average_sentiment(const AggregateTable& table, Party party) {
  std::uint64_t sum = 0;
  std::uint64_t n = 0;
  for (const auto& [name, agg] : table.entities) {
    sum += agg.tally(party).sentiment_sum;
    n += agg.tally(party).mention_count;
  }
  if (n == 0) {
    throw DataError(fmt::format("no {} mentions", to_string(party)));
  }
  return static_cast<double>(sum) / static_cast<double>(n);
}

namespace {

WindowSummary summarize(const AggregateTable& table, std::uint64_t volume,
                        std::string_view window_name) {
  WindowSummary s;
  s.entities = entity_polarities(table);
  if (s.entities.empty()) {
    throw NoJointEntitiesError(fmt::format(
        "no jointly-mentioned entities in the {} window", window_name));
  }
  s.polarization = corpus_polarization(s.entities);
  s.avg_dem_sentiment = party_average_sentiment(table, Party::kDemocrat);
  s.avg_rep_sentiment = party_average_sentiment(table, Party::kRepublican);
  s.tweet_volume = volume;
  s.entity_count = table.entities.size();
  return s;
}

}  // namespace

PolarizationReport build_report(const AggregateTable& baseline,
                                const AggregateTable& crisis,
                                const EventWindows& windows,
                                const WindowVolumes& volumes) {
  PolarizationReport r;
  r.event_name = windows.event_name;
  r.baseline = summarize(baseline, volumes.baseline_tweets, "baseline");
  r.crisis = summarize(crisis, volumes.crisis_tweets, "crisis");
  r.delta_pp =
      (r.crisis.polarization.p_total - r.baseline.polarization.p_total) * 100.0;
  return r;
}

// --- rendering ------------------------------------------------------------

std::string format_fixed_half_up(double value, int decimals) {
  if (!std::isfinite(value)) return fmt::format("{}", value);
  const bool negative = value < 0;
  const double scale = std::pow(10.0, decimals);
  const double scaled = std::abs(value) * scale;
  const double nudge = 1e-9 * std::max(1.0, scaled);
  const auto units = static_cast<std::uint64_t>(std::floor(scaled + 0.5 + nudge));
  const auto pow10 = static_cast<std::uint64_t>(scale);
  std::string out = (negative && units != 0) ? "-" : "";
  out += std::to_string(units / pow10);
  if (decimals > 0) {
    out += fmt::format(".{:0{}d}", units % pow10, decimals);
  }
  return out;
}

std::string format_percent(double fraction) {
  return format_fixed_half_up(fraction * 100.0, 1) + "%";
}

std::string format_delta_pp(double pp) {
  auto s = format_fixed_half_up(pp, 1);
  if (s.front() != '-' && s != "0.0") s.insert(s.begin(), '+');
  return s + "pp";
}

void write_report_csv(std::ostream& out, const PolarizationReport& r) {
  out << "event,avg_dem_baseline,avg_dem_crisis,avg_rep_baseline,"
         "avg_rep_crisis,polarization_baseline_pct,polarization_crisis_pct,"
         "delta_pp\n";
  csv::write_row(out, {r.event_name,
                       format_fixed_half_up(r.baseline.avg_dem_sentiment, 2),
                       format_fixed_half_up(r.crisis.avg_dem_sentiment, 2),
                       format_fixed_half_up(r.baseline.avg_rep_sentiment, 2),
                       format_fixed_half_up(r.crisis.avg_rep_sentiment, 2),
                       format_percent(r.baseline.polarization.p_total),
                       format_percent(r.crisis.polarization.p_total),
                       format_delta_pp(r.delta_pp)});
}

void write_entities_csv(std::ostream& out, const PolarizationReport& r) {
  out << "entity,p,weight,window\n";
  for (auto [summary, window] :
       {std::pair{&r.baseline, "baseline"}, std::pair{&r.crisis, "crisis"}}) {
    for (const auto& e : summary->entities) {
      csv::write_row(out, {e.entity_name, fmt::format("{:.6f}", e.p),
                           std::to_string(e.weight), window});
    }
  }
}

namespace {

nlohmann::json window_json(const WindowSummary& s) {
  return {{"avg_dem_sentiment", s.avg_dem_sentiment},
          {"avg_rep_sentiment", s.avg_rep_sentiment},
          {"tweet_volume", s.tweet_volume},
          {"entity_count", s.entity_count},
          {"joint_entity_count", s.polarization.entity_count},
          {"total_weight", s.polarization.total_weight},
          {"p_total", s.polarization.p_total},
          {"polarization_pct", format_percent(s.polarization.p_total)}};
}

}  // namespace

void write_report_json(std::ostream& out, const PolarizationReport& r) {
  nlohmann::json j = {{"event", r.event_name},
                      {"baseline", window_json(r.baseline)},
                      {"crisis", window_json(r.crisis)},
                      {"delta_pp", r.delta_pp},
                      {"delta_display", format_delta_pp(r.delta_pp)},
                      {"delta_unit", "percentage points"}};
  out << j.dump(2) << '\n';
}

void write_report_table(std::ostream& out, const PolarizationReport& r) {
  out << fmt::format("Event: {}\n", r.event_name);
  out << fmt::format("{:<28}{:>12}{:>12}\n", "", "Baseline", "Crisis");
  auto row = [&](std::string_view label, const std::string& b,
                 const std::string& c) {
    out << fmt::format("{:<28}{:>12}{:>12}\n", label, b, c);
  };
  row("Tweets tested", std::to_string(r.baseline.tweet_volume),
      std::to_string(r.crisis.tweet_volume));
  row("Entities", std::to_string(r.baseline.entity_count),
      std::to_string(r.crisis.entity_count));
  row("Joint entities", std::to_string(r.baseline.polarization.entity_count),
      std::to_string(r.crisis.polarization.entity_count));
  row("Avg. Dem. sentiment", format_fixed_half_up(r.baseline.avg_dem_sentiment, 2),
      format_fixed_half_up(r.crisis.avg_dem_sentiment, 2));
  row("Avg. Rep. sentiment", format_fixed_half_up(r.baseline.avg_rep_sentiment, 2),
      format_fixed_half_up(r.crisis.avg_rep_sentiment, 2));
  row("Polarization", format_percent(r.baseline.polarization.p_total),
      format_percent(r.crisis.polarization.p_total));
  out << fmt::format("Change: {}\n", format_delta_pp(r.delta_pp));
}

}  // namespace partisan
