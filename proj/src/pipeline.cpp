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

#include "partisan/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include <json.hpp>

#include "partisan/error.hpp"

namespace partisan {

void RunConfig::validate() const {
  if (tweets.empty()) throw ConfigError("--tweets is required");
  if (windows.empty()) throw ConfigError("--windows is required");
  if (out_dir.empty()) throw ConfigError("--out is required");
  const bool reference = !lexicon.empty() || !gazetteer.empty();
  if (reference == !preannotated.empty()) {
    throw ConfigError(
        "provide exactly one of --lexicon/--gazetteer or --preannotated");
  }
  if (reference && (lexicon.empty() || gazetteer.empty())) {
    throw ConfigError("--lexicon and --gazetteer must be given together");
  }
  const bool roster_given = !roster.empty() || !followers.empty();
  if (roster_given == !affiliations.empty()) {
    throw ConfigError(
        "provide exactly one of --roster/--followers or --affiliations");
  }
  if (roster_given && (roster.empty() || followers.empty())) {
    throw ConfigError("--roster and --followers must be given together");
  }
  if (shards < 1) throw ConfigError("--shards must be at least 1");
  policy();
}

EntityTypePolicy RunConfig::policy() const {
  if (!entity_types) return EntityTypePolicy::defaults();
  return EntityTypePolicy::with_allowlist(*entity_types);
}

std::vector<TweetRecord> load_tweets(const fs::path& path, bool strict,
                                     Diagnostics& diag) {
  auto parsed = parse_tweets(path);
  if (strict) parsed.require_clean();
  diag.rejected_lines += parsed.rejected.size();
  for (const auto& r : parsed.rejected) {
    diag.warnings.push_back(
        fmt::format("{}:{}: skipped: {}", parsed.source, r.line, r.reason));
  }
  return std::move(parsed.records);
}

Partition load_partition(const RunConfig& cfg,
                         const std::vector<TweetRecord>& tweets) {
  if (!cfg.affiliations.empty()) {
    auto p = read_affiliations_csv(cfg.affiliations);
    for (const auto& t : tweets) p.users.try_emplace(t.user_id);
    return p;
  }
  return partition_corpus(tweets, load_affiliation_data(cfg.roster, cfg.followers));
}

namespace {

struct ShardResult {
  std::vector<EntityMentionRow> rows;
  WindowedTables tables;
  WindowVolumes volumes;
  std::size_t dropped = 0;
};

// One unit of work: the tweet plus, for pre-annotated input, its annotation.
struct WorkItem {
  const TweetRecord* tweet = nullptr;
  const AnnotatedTweet* annotation = nullptr;
};

void process(std::span<const WorkItem> items, const EventWindows& windows,
             const Partition& partition, const ReferenceAnnotator* annotator,
             ShardResult& out) {
  for (const auto& item : items) {
    const auto& t = *item.tweet;
    auto label = partition.label_of(t.user_id);
    auto window = classify_window(t.created_at, windows);
    if (label == PartyLabel::kUnaligned || window == WindowLabel::kOutside) {
      continue;
    }
    (window == WindowLabel::kBaseline ? out.volumes.baseline_tweets
                                      : out.volumes.crisis_tweets) += 1;
    auto rows = item.annotation
                    ? emit_mention_rows(*item.annotation, label, window, &out.dropped)
                    : emit_mention_rows(annotator->annotate(t), label, window,
                                        &out.dropped);
    for (auto& row : rows) {
      out.tables.for_window(row.window).add(row);
      out.rows.push_back(std::move(row));
    }
  }
}

}  // namespace

MentionStage compute_mentions(const RunConfig& cfg) {
  cfg.validate();
  MentionStage stage;
  stage.windows = load_windows(cfg.windows);
  auto tweets = load_tweets(cfg.tweets, cfg.strict, stage.diagnostics);
  stage.partition = load_partition(cfg, tweets);
  const auto policy = cfg.policy();

  std::optional<ReferenceAnnotator> annotator;
  std::vector<AnnotatedTweet> annotations;
  std::vector<WorkItem> items;
  if (cfg.preannotated.empty()) {
    annotator.emplace(load_lexicon(cfg.lexicon), load_gazetteer(cfg.gazetteer),
                      policy);
    items.reserve(tweets.size());
    for (const auto& t : tweets) {
      if (!t.deleted) items.push_back({&t, nullptr});
    }
  } else {
    annotations = ingest_preannotated(cfg.preannotated, policy);
    std::unordered_map<std::string, const TweetRecord*> by_id;
    by_id.reserve(tweets.size());
    for (const auto& t : tweets) by_id.emplace(t.tweet_id, &t);
    std::unordered_set<std::string> seen;
    for (const auto& a : annotations) {
      auto it = by_id.find(a.tweet_id);
      if (it == by_id.end()) {
        throw DataError("pre-annotated tweet " + a.tweet_id +
                        " is not in the tweets file");
      }
      if (!seen.insert(a.tweet_id).second) {
        throw DataError("pre-annotated tweet " + a.tweet_id + " appears twice");
      }
      if (it->second->user_id != a.user_id) {
        throw DataError("pre-annotated tweet " + a.tweet_id +
                        " has a different user_id than the tweets file");
      }
      if (it->second->deleted) {
        ++stage.diagnostics.deleted_preannotated;
        continue;
      }
      items.push_back({it->second, &a});
    }
    if (stage.diagnostics.deleted_preannotated > 0) {
      stage.diagnostics.warnings.push_back(fmt::format(
          "ignored {} pre-annotated deleted tweet(s)",
          stage.diagnostics.deleted_preannotated));
    }
  }

  const std::size_t shards = std::max<std::size_t>(
      1, std::min<std::size_t>(cfg.shards, std::max<std::size_t>(items.size(), 1)));
  std::vector<ShardResult> results(shards);
  const ReferenceAnnotator* ann = annotator ? &*annotator : nullptr;
  auto slice = [&](std::size_t i) {
    const std::size_t begin = items.size() * i / shards;
    const std::size_t end = items.size() * (i + 1) / shards;
    return std::span<const WorkItem>(items).subspan(begin, end - begin);
  };
  if (shards == 1) {
    process(slice(0), stage.windows, stage.partition, ann, results[0]);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(shards);
    for (std::size_t i = 0; i < shards; ++i) {
      workers.emplace_back([&, i] {
        process(slice(i), stage.windows, stage.partition, ann, results[i]);
      });
    }
  }

  for (auto& r : results) {
    stage.tables = merge_aggregates(stage.tables, r.tables);
    stage.volumes.baseline_tweets += r.volumes.baseline_tweets;
    stage.volumes.crisis_tweets += r.volumes.crisis_tweets;
    stage.diagnostics.dropped_mentions += r.dropped;
    stage.rows.insert(stage.rows.end(), std::make_move_iterator(r.rows.begin()),
                      std::make_move_iterator(r.rows.end()));
  }
  if (stage.diagnostics.dropped_mentions > 0) {
    stage.diagnostics.warnings.push_back(
        fmt::format("dropped {} mention(s) with empty entity names",
                    stage.diagnostics.dropped_mentions));
  }
  return stage;
}

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

}  // namespace

void write_volumes_json(const WindowVolumes& v, const fs::path& path) {
  auto out = open_output(path);
  nlohmann::json j = {{"baseline_tweets", v.baseline_tweets},
                      {"crisis_tweets", v.crisis_tweets}};
  out << j.dump(2) << '\n';
}

WindowVolumes read_volumes_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open volumes file " + path.string());
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() ||
      !j.value("baseline_tweets", nlohmann::json()).is_number_unsigned() ||
      !j.value("crisis_tweets", nlohmann::json()).is_number_unsigned()) {
    throw DataError(path.string() + ": expected {baseline_tweets, crisis_tweets}");
  }
  return {j["baseline_tweets"].get<std::uint64_t>(),
          j["crisis_tweets"].get<std::uint64_t>()};
}

void write_mention_stage(const MentionStage& stage, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  {
    auto out = open_output(out_dir / "mentions.csv");
    write_mentions_header(out);
    for (const auto& row : stage.rows) write_mention_row(out, row);
  }
  {
    auto out = open_output(out_dir / "aggregates_baseline.csv");
    write_aggregate_csv(out, stage.tables.baseline);
  }
  {
    auto out = open_output(out_dir / "aggregates_crisis.csv");
    write_aggregate_csv(out, stage.tables.crisis);
  }
  write_volumes_json(stage.volumes, out_dir / "volumes.json");
}

void write_report_files(const PolarizationReport& report,
                        const fs::path& out_dir) {
  fs::create_directories(out_dir);
  {
    auto out = open_output(out_dir / "report.csv");
    write_report_csv(out, report);
  }
  {
    auto out = open_output(out_dir / "report.json");
    write_report_json(out, report);
  }
  {
    auto out = open_output(out_dir / "entities.csv");
    write_entities_csv(out, report);
  }
}

PipelineResult run_pipeline(const RunConfig& cfg) {
  PipelineResult result;
  result.stage = compute_mentions(cfg);
  write_mention_stage(result.stage, cfg.out_dir);
  result.report = build_report(result.stage.tables.baseline,
                               result.stage.tables.crisis, result.stage.windows,
                               result.stage.volumes);
  write_report_files(*result.report, cfg.out_dir);
  return result;
}

}  // namespace partisan
