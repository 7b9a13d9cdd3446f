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

// Command-line driver: `partisan run` for the whole pipeline, plus one
// subcommand per stage so intermediate files can be inspected.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <json.hpp>

#include "partisan/csv.hpp"
#include "partisan/error.hpp"
#include "partisan/pipeline.hpp"
#include "partisan/synth.hpp"

namespace {

using namespace partisan;

void print_warnings(const Diagnostics& d) {
  constexpr std::size_t kMaxShown = 20;
  for (std::size_t i = 0; i < d.warnings.size() && i < kMaxShown; ++i) {
    std::cerr << "warning: " << d.warnings[i] << '\n';
  }
  if (d.warnings.size() > kMaxShown) {
    std::cerr << fmt::format("warning: ... {} more\n",
                             d.warnings.size() - kMaxShown);
  }
}

void print_report(const PolarizationReport& r, const std::string& format) {
  if (format == "csv") {
    write_report_csv(std::cout, r);
  } else if (format == "json") {
    write_report_json(std::cout, r);
  } else {
    write_report_table(std::cout, r);
  }
}

std::ofstream open_out(const fs::path& dir, const char* name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw DataError("cannot write " + (dir / name).string());
  return out;
}

struct Options {
  RunConfig cfg;
  std::string entity_types;
  std::string format = "table";
  fs::path mentions;
  fs::path aggregates_baseline;
  fs::path aggregates_crisis;
  fs::path volumes;
  fs::path spec;
  std::optional<std::uint64_t> seed;
};

void add_inputs(CLI::App* app, Options& o) {
  app->add_option("--tweets", o.cfg.tweets, "Tweets JSON-lines file");
  app->add_option("--roster", o.cfg.roster, "Figurehead roster CSV");
  app->add_option("--followers", o.cfg.followers, "Directory of <handle>.txt");
  app->add_option("--affiliations", o.cfg.affiliations,
                  "affiliations.csv from `assign` (replaces roster/followers)");
  app->add_option("--lexicon", o.cfg.lexicon, "Lexicon TSV");
  app->add_option("--gazetteer", o.cfg.gazetteer, "Gazetteer TSV");
  app->add_option("--preannotated", o.cfg.preannotated,
                  "Pre-annotated JSON-lines (replaces lexicon/gazetteer)");
  app->add_option("--windows", o.cfg.windows, "Event windows JSON");
  app->add_option("--entity-types", o.entity_types,
                  "Accepted entity types, comma separated")
      ->default_str("LOCATION,MISC,PERSON");
  app->add_option("--out", o.cfg.out_dir, "Output directory")->required();
  app->add_option("--shards", o.cfg.shards, "Parallel shards")
      ->check(CLI::PositiveNumber);
  app->add_flag("--strict", o.cfg.strict, "Abort on any malformed tweet line");
}

int cmd_run(Options& o) {
  auto result = run_pipeline(o.cfg);
  print_warnings(result.stage.diagnostics);
  print_report(*result.report, o.format);
  return exit_code::kOk;
}

int cmd_assign(Options& o) {
  if (o.cfg.tweets.empty()) throw ConfigError("--tweets is required");
  if (o.cfg.roster.empty() || o.cfg.followers.empty()) {
    throw ConfigError("--roster and --followers are required");
  }
  Diagnostics diag;
  auto tweets = load_tweets(o.cfg.tweets, o.cfg.strict, diag);
  auto partition =
      partition_corpus(tweets, load_affiliation_data(o.cfg.roster, o.cfg.followers));
  auto out = open_out(o.cfg.out_dir, "affiliations.csv");
  write_affiliations_csv(out, partition);
  print_warnings(diag);
  std::cout << fmt::format("users: {} Democrat, {} Republican, {} Unaligned\n",
                           partition.count(PartyLabel::kDemocrat),
                           partition.count(PartyLabel::kRepublican),
                           partition.count(PartyLabel::kUnaligned));
  return exit_code::kOk;
}

int cmd_annotate(Options& o) {
  if (o.cfg.tweets.empty() || o.cfg.lexicon.empty() || o.cfg.gazetteer.empty()) {
    throw ConfigError("--tweets, --lexicon and --gazetteer are required");
  }
  Diagnostics diag;
  auto tweets = load_tweets(o.cfg.tweets, o.cfg.strict, diag);
  ReferenceAnnotator annotator(load_lexicon(o.cfg.lexicon),
                               load_gazetteer(o.cfg.gazetteer), o.cfg.policy());
  auto out = open_out(o.cfg.out_dir, "annotated.jsonl");
  std::size_t n = 0;
  for (const auto& t : tweets) {
    if (t.deleted) continue;
    out << to_preannotated_json(annotator.annotate(t)) << '\n';
    ++n;
  }
  print_warnings(diag);
  std::cout << fmt::format("annotated {} tweet(s)\n", n);
  return exit_code::kOk;
}

int cmd_mentions(Options& o) {
  auto stage = compute_mentions(o.cfg);
  auto out = open_out(o.cfg.out_dir, "mentions.csv");
  write_mentions_header(out);
  for (const auto& row : stage.rows) write_mention_row(out, row);
  write_volumes_json(stage.volumes, o.cfg.out_dir / "volumes.json");
  print_warnings(stage.diagnostics);
  std::cout << fmt::format("{} mention row(s)\n", stage.rows.size());
  return exit_code::kOk;
}

int cmd_aggregate(Options& o) {
  if (o.mentions.empty()) throw ConfigError("--mentions is required");
  auto tables = reduce_by_window(read_mentions_csv(o.mentions));
  auto b = open_out(o.cfg.out_dir, "aggregates_baseline.csv");
  write_aggregate_csv(b, tables.baseline);
  auto c = open_out(o.cfg.out_dir, "aggregates_crisis.csv");
  write_aggregate_csv(c, tables.crisis);
  std::cout << fmt::format("entities: {} baseline, {} crisis\n",
                           tables.baseline.entities.size(),
                           tables.crisis.entities.size());
  return exit_code::kOk;
}

int cmd_polarize(Options& o) {
  if (o.aggregates_baseline.empty() || o.aggregates_crisis.empty()) {
    throw ConfigError("--aggregates-baseline and --aggregates-crisis are required");
  }
  nlohmann::json summary;
  auto out = open_out(o.cfg.out_dir, "entities.csv");
  out << "entity,p,weight,window\n";
  for (auto [path, window] : {std::pair{&o.aggregates_baseline, "baseline"},
                              std::pair{&o.aggregates_crisis, "crisis"}}) {
    auto polarities = entity_polarities(read_aggregate_csv(*path));
    for (const auto& e : polarities) {
      csv::write_row(out, {e.entity_name, fmt::format("{:.6f}", e.p),
                           std::to_string(e.weight), window});
    }
    if (polarities.empty()) {
      throw NoJointEntitiesError(
          fmt::format("no jointly-mentioned entities in the {} window", window));
    }
    auto total = corpus_polarization(polarities);
    summary[window] = {{"p_total", total.p_total},
                       {"polarization_pct", format_percent(total.p_total)},
                       {"joint_entity_count", total.entity_count},
                       {"total_weight", total.total_weight}};
    std::cout << fmt::format("{}: {}\n", window, format_percent(total.p_total));
  }
  open_out(o.cfg.out_dir, "polarization.json") << summary.dump(2) << '\n';
  return exit_code::kOk;
}

int cmd_report(Options& o) {
  if (o.aggregates_baseline.empty() || o.aggregates_crisis.empty() ||
      o.cfg.windows.empty()) {
    throw ConfigError(
        "--aggregates-baseline, --aggregates-crisis and --windows are required");
  }
  WindowVolumes volumes;
  if (!o.volumes.empty()) volumes = read_volumes_json(o.volumes);
  auto report = build_report(read_aggregate_csv(o.aggregates_baseline),
                             read_aggregate_csv(o.aggregates_crisis),
                             load_windows(o.cfg.windows), volumes);
  write_report_files(report, o.cfg.out_dir);
  print_report(report, o.format);
  return exit_code::kOk;
}

int cmd_synth(Options& o) {
  if (o.spec.empty()) throw ConfigError("--spec is required");
  auto spec = synth::load_planted_spec(o.spec);
  if (o.seed) spec.seed = *o.seed;
  auto bundle = synth::generate_corpus(spec);
  synth::write_bundle(bundle, spec, o.cfg.out_dir);
  std::cout << fmt::format("wrote {} tweet(s) to {}\n", bundle.tweets.size(),
                           o.cfg.out_dir.string());
  return exit_code::kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partisan polarization pipeline"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "Run the full pipeline");
  add_inputs(run, o);
  run->add_option("--format", o.format, "Report printed to stdout")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  auto* assign = app.add_subcommand("assign", "Assign users to parties");
  add_inputs(assign, o);

  auto* annotate = app.add_subcommand("annotate", "Annotate tweets");
  add_inputs(annotate, o);

  auto* mentions = app.add_subcommand("mentions", "Emit entity mention rows");
  add_inputs(mentions, o);

  auto* aggregate = app.add_subcommand("aggregate", "Reduce mentions per entity");
  aggregate->add_option("--mentions", o.mentions, "mentions.csv");
  aggregate->add_option("--out", o.cfg.out_dir, "Output directory")->required();

  auto* polarize = app.add_subcommand("polarize", "Per-entity and total polarization");
  auto* report = app.add_subcommand("report", "Baseline vs crisis report");
  for (auto* sub : {polarize, report}) {
    sub->add_option("--aggregates-baseline", o.aggregates_baseline,
                    "aggregates_baseline.csv");
    sub->add_option("--aggregates-crisis", o.aggregates_crisis,
                    "aggregates_crisis.csv");
    sub->add_option("--out", o.cfg.out_dir, "Output directory")->required();
  }
  report->add_option("--windows", o.cfg.windows, "Event windows JSON");
  report->add_option("--volumes", o.volumes, "volumes.json from `mentions`");
  report->add_option("--format", o.format, "Report printed to stdout")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  auto* synth = app.add_subcommand("synth", "Generate a planted corpus bundle");
  synth->add_option("--spec", o.spec, "Planted spec JSON");
  synth->add_option("--out", o.cfg.out_dir, "Bundle directory")->required();
  synth->add_option("--seed", o.seed, "Seed to use instead of the one in --spec");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? exit_code::kOk : exit_code::kUsage;
  }
  if (!o.entity_types.empty()) o.cfg.entity_types = o.entity_types;

  try {
    if (*run) return cmd_run(o);
    if (*assign) return cmd_assign(o);
    if (*annotate) return cmd_annotate(o);
    if (*mentions) return cmd_mentions(o);
    if (*aggregate) return cmd_aggregate(o);
    if (*polarize) return cmd_polarize(o);
    if (*report) return cmd_report(o);
    if (*synth) return cmd_synth(o);
  } catch (const NoJointEntitiesError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::kNoJointEntities;
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return exit_code::kData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return exit_code::kData;
  }
  return exit_code::kUsage;
}
