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

#ifndef PARTISAN_PIPELINE_HPP_
#define PARTISAN_PIPELINE_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "partisan/affiliation.hpp"
#include "partisan/aggregate.hpp"
#include "partisan/annotator.hpp"
#include "partisan/corpus.hpp"
#include "partisan/polarimetry.hpp"

namespace partisan {

namespace fs = std::filesystem;

struct RunConfig {
  fs::path tweets;
  // Either roster + followers, or a precomputed affiliations CSV.
  fs::path roster;
  fs::path followers;
  fs::path affiliations;
  // Either lexicon + gazetteer, or a pre-annotated JSON-lines file.
  fs::path lexicon;
  fs::path gazetteer;
  fs::path preannotated;
  fs::path windows;
  std::optional<std::string> entity_types;  // comma-separated allowlist
  fs::path out_dir;
  bool strict = false;
  unsigned shards = 1;

  // Throws ConfigError on a missing or contradictory combination.
  void validate() const;
  EntityTypePolicy policy() const;
};

struct Diagnostics {
  std::size_t rejected_lines = 0;
  std::size_t dropped_mentions = 0;     // names empty after normalization
  std::size_t deleted_preannotated = 0; // pre-annotated lines for deleted tweets
  std::vector<std::string> warnings;
};

// Everything up to and including the per-window aggregate tables.
struct MentionStage {
  EventWindows windows;
  Partition partition;
  std::vector<EntityMentionRow> rows;  // input order
  WindowedTables tables;
  WindowVolumes volumes;
  Diagnostics diagnostics;
};

// Loads inputs, assigns parties, annotates and reduces, sharded over
// cfg.shards threads. Rows keep input order for every shard count.
MentionStage compute_mentions(const RunConfig& cfg);

struct PipelineResult {
  MentionStage stage;
  std::optional<PolarizationReport> report;
};

// Full pipeline. Writes mentions.csv, aggregates_baseline.csv,
// aggregates_crisis.csv, volumes.json, then report.csv, report.json and
// entities.csv. Intermediate files are written even when the report step
// throws NoJointEntitiesError.
PipelineResult run_pipeline(const RunConfig& cfg);

// Stage entry points behind the CLI subcommands.
Partition load_partition(const RunConfig& cfg,
                         const std::vector<TweetRecord>& tweets);
void write_mention_stage(const MentionStage& stage, const fs::path& out_dir);
void write_report_files(const PolarizationReport& report, const fs::path& out_dir);

void write_volumes_json(const WindowVolumes& v, const fs::path& path);
WindowVolumes read_volumes_json(const fs::path& path);

// Every parsed tweet (deleted ones included) in file order. With `strict`
// any rejected line throws; otherwise rejections become warnings.
std::vector<TweetRecord> load_tweets(const fs::path& path, bool strict,
                                     Diagnostics& diag);

}  // namespace partisan

#endif  // PARTISAN_PIPELINE_HPP_
