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

#include "partisan/aggregate.hpp"

#include <charconv>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "partisan/csv.hpp"
#include "partisan/error.hpp"
#include "partisan/text.hpp"

namespace partisan {

std::optional<std::string> normalize_entity_name(std::string_view raw) {
  auto out = text::collapse_whitespace(text::to_lower(raw));
  if (out.empty()) return std::nullopt;
  return out;
}

std::vector<EntityMentionRow> emit_mention_rows(const AnnotatedTweet& a,
                                                PartyLabel label,
                                                WindowLabel window,
                                                std::size_t* dropped) {
  std::vector<EntityMentionRow> rows;
  auto party = to_party(label);
  if (!party || window == WindowLabel::kOutside) return rows;
  for (const auto& s : a.sentences) {
    for (const auto& e : s.entities) {
      auto name = normalize_entity_name(e.surface);
      if (!name) {
        if (dropped) ++*dropped;
        continue;
      }
      rows.push_back({std::move(*name), e.entity_type, a.user_id, s.sentiment,
                      *party, window});
    }
  }
  return rows;
}

double PartyTally::mean() const {
  if (mention_count == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(sentiment_sum) /
         static_cast<double>(mention_count);
}

std::uint64_t AggregateTable::total_mentions(Party p) const {
  std::uint64_t n = 0;
  for (const auto& [name, agg] : entities) n += agg.tally(p).mention_count;
  return n;
}

AggregateTable reduce_to_instances(std::span<const EntityMentionRow> rows) {
  AggregateTable table;
  if (rows.empty()) return table;
  const auto window = rows.front().window;
  for (const auto& row : rows) {
    if (row.window != window) {
      throw ContractViolation("reduce_to_instances: rows span several windows");
    }
    table.add(row);
  }
  return table;
}

AggregateTable& WindowedTables::for_window(WindowLabel w) {
  if (w == WindowLabel::kBaseline) return baseline;
  if (w == WindowLabel::kCrisis) return crisis;
  throw ContractViolation("no aggregate table for the outside window");
}

WindowedTables reduce_by_window(std::span<const EntityMentionRow> rows) {
  WindowedTables out;
  for (const auto& row : rows) out.for_window(row.window).add(row);
  return out;
}

AggregateTable merge_aggregates(const AggregateTable& a,
                                const AggregateTable& b) {
  AggregateTable out = a;
  for (const auto& [name, agg] : b.entities) {
    auto& dst = out.entities[name];
    dst.democrat += agg.democrat;
    dst.republican += agg.republican;
  }
  return out;
}

WindowedTables merge_aggregates(const WindowedTables& a,
                                const WindowedTables& b) {
  return {merge_aggregates(a.baseline, b.baseline),
          merge_aggregates(a.crisis, b.crisis)};
}

// --- CSV ------------------------------------------------------------------

namespace {

template <typename T>
T parse_number(const std::string& s, const csv::Reader& r, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw LineError(r.path(), r.line(), fmt::format("invalid {} '{}'", what, s));
  }
  return v;
}

Party parse_party(const std::string& s, const csv::Reader& r) {
  if (s == "Democrat") return Party::kDemocrat;
  if (s == "Republican") return Party::kRepublican;
  throw LineError(r.path(), r.line(), "invalid party '" + s + "'");
}

}  // namespace

void write_mentions_header(std::ostream& out) {
  out << "entity,entity_type,user_id,sentiment,party,window\n";
}

void write_mention_row(std::ostream& out, const EntityMentionRow& row) {
  csv::write_row(out, {row.entity_name, row.entity_type, row.user_id,
                       std::to_string(row.sentiment), to_string(row.party),
                       to_string(row.window)});
}

std::vector<EntityMentionRow> read_mentions_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open mentions file " + path.string());
  csv::Reader reader(in, path.string());
  static constexpr std::string_view kHeader[] = {
      "entity", "entity_type", "user_id", "sentiment", "party", "window"};
  reader.expect_header(kHeader);
  std::vector<EntityMentionRow> rows;
  std::vector<std::string> f;
  while (reader.next(f)) {
    if (f.size() != 6) {
      throw LineError(reader.path(), reader.line(), "expected 6 columns");
    }
    EntityMentionRow row;
    auto name = normalize_entity_name(f[0]);
    if (!name || *name != f[0]) {
      throw LineError(reader.path(), reader.line(),
                      "entity name is not normalized");
    }
    row.entity_name = std::move(*name);
    row.entity_type = f[1];
    row.user_id = f[2];
    row.sentiment = parse_number<int>(f[3], reader, "sentiment");
    if (row.sentiment < kMinSentiment || row.sentiment > kMaxSentiment) {
      throw LineError(reader.path(), reader.line(), "sentiment outside 0..4");
    }
    row.party = parse_party(f[4], reader);
    if (f[5] == "baseline") {
      row.window = WindowLabel::kBaseline;
    } else if (f[5] == "crisis") {
      row.window = WindowLabel::kCrisis;
    } else {
      throw LineError(reader.path(), reader.line(), "invalid window '" + f[5] + "'");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_aggregate_csv(std::ostream& out, const AggregateTable& table) {
  out << "entity,party,sentiment_sum,mention_count,mean_sentiment\n";
  for (const auto& [name, agg] : table.entities) {
    for (Party p : {Party::kDemocrat, Party::kRepublican}) {
      const auto& t = agg.tally(p);
      if (t.mention_count == 0) continue;
      csv::write_row(out, {name, to_string(p), std::to_string(t.sentiment_sum),
                           std::to_string(t.mention_count),
                           fmt::format("{:.6f}", t.mean())});
    }
  }
}

AggregateTable read_aggregate_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open aggregate file " + path.string());
  csv::Reader reader(in, path.string());
  static constexpr std::string_view kHeader[] = {
      "entity", "party", "sentiment_sum", "mention_count", "mean_sentiment"};
  reader.expect_header(kHeader);
  AggregateTable table;
  std::vector<std::string> f;
  while (reader.next(f)) {
    if (f.size() != 5) {
      throw LineError(reader.path(), reader.line(), "expected 5 columns");
    }
    auto name = normalize_entity_name(f[0]);
    if (!name || *name != f[0]) {
      throw LineError(reader.path(), reader.line(),
                      "entity name is not normalized");
    }
    auto party = parse_party(f[1], reader);
    PartyTally t{parse_number<std::uint64_t>(f[2], reader, "sentiment_sum"),
                 parse_number<std::uint64_t>(f[3], reader, "mention_count")};
    if (t.mention_count == 0 ||
        t.sentiment_sum > static_cast<std::uint64_t>(kMaxSentiment) * t.mention_count) {
      throw LineError(reader.path(), reader.line(),
                      "inconsistent sentiment_sum / mention_count");
    }
    auto& slot = table.entities[*name].tally(party);
    if (slot.mention_count != 0) {
      throw LineError(reader.path(), reader.line(), "duplicate entity/party row");
    }
    slot = t;
  }
  return table;
}

}  // namespace partisan
