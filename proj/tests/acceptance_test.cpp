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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "partisan/error.hpp"
#include "partisan/pipeline.hpp"
#include "partisan/polarimetry.hpp"
#include "partisan/synth.hpp"
#include "testutil.hpp"

namespace partisan {
namespace {

namespace fs = std::filesystem;
using synth::PlantedEntity;
using synth::PlantedSpec;
using synth::PlantedWindow;
using synth::SentimentDist;
using testing::TempDir;
using testing::bundle_config;
using testing::read_file;
using testing::write_file;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SentimentDist point(int k) {
  SentimentDist d{};
  d[k] = 1.0;
  return d;
}

void write_bundle_for(const PlantedSpec& spec, const fs::path& dir) {
  synth::write_bundle(synth::generate_corpus(spec), spec, dir);
}

// A few thousand tweets over both windows, with every kind of noise.
PlantedSpec medium_spec(std::uint64_t seed) {
  PlantedSpec spec;
  spec.seed = seed;
  spec.users_per_party = 40;
  spec.unaligned_users = 25;
  spec.deleted_tweets = 25;
  spec.outside_tweets = 25;
  spec.windows = testing::covid_windows();
  spec.entities = {
      {"Donald Trump", "PERSON", {0.1, 0.1, 0.2, 0.3, 0.3}, {0.4, 0.3, 0.2, 0.1, 0.0}, 300,
       PlantedWindow::kBoth},
      {"Wuhan", "LOCATION", {0.2, 0.2, 0.2, 0.2, 0.2}, {0.3, 0.3, 0.2, 0.1, 0.1}, 200,
       PlantedWindow::kBoth},
      {"Joe Biden", "PERSON", {0.0, 0.1, 0.3, 0.3, 0.3}, {0.2, 0.3, 0.3, 0.1, 0.1}, 150,
       PlantedWindow::kBaseline},
      {"CDC", "MISC", {0.1, 0.2, 0.4, 0.2, 0.1}, {0.1, 0.2, 0.4, 0.2, 0.1}, 150,
       PlantedWindow::kCrisis}};
  return spec;
}

Outcome oracle_equivalence() {
  TempDir dir;
  double worst = 0;
  double compute = 0;
  std::size_t max_tweets = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto spec = testing::random_spec(seed, 200);
    auto bundle = synth::generate_corpus(spec);
    max_tweets = std::max(max_tweets, bundle.tweets.size());
    const fs::path b = dir / fmt::format("b{}", seed);
    synth::write_bundle(bundle, spec, b);
    auto t0 = Clock::now();
    auto result = run_pipeline(bundle_config(b, dir / fmt::format("o{}", seed)));
    compute += seconds_since(t0);
    for (auto w : {WindowLabel::kBaseline, WindowLabel::kCrisis}) {
      const auto& truth = bundle.truth.for_window(w);
      const auto& got = w == WindowLabel::kBaseline ? result.report->baseline
                                                    : result.report->crisis;
      if (!truth.p_total) return {false, fmt::format("seed {}: no planted p_total", seed)};
      worst = std::max(worst, std::fabs(got.polarization.p_total - *truth.p_total));
    }
  }
  return {worst <= 1e-12 && compute < 10.0 && max_tweets <= 200,
          fmt::format("max |p_total - oracle| = {:.3g} over 50 bundles (<= {} tweets), "
                      "pipeline time {:.2f} s (tol 1e-12, < 10 s)",
                      worst, max_tweets, compute)};
}

Outcome formula_fidelity() {
  int mismatches = 0;
  double best = 0;
  std::vector<std::pair<double, double>> argmax;
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; j <= 8; ++j) {
      const double p = entity_polarization(i / 2.0, j / 2.0);
      if (p != std::abs(i - j) / 10.0) ++mismatches;
      if (p > best) {
        best = p;
        argmax.clear();
      }
      if (p == best) argmax.emplace_back(i / 2.0, j / 2.0);
    }
  }
  const bool corners =
      argmax.size() == 2 &&
      std::find(argmax.begin(), argmax.end(), std::pair{4.0, 0.0}) != argmax.end() &&
      std::find(argmax.begin(), argmax.end(), std::pair{0.0, 4.0}) != argmax.end();
  return {mismatches == 0 && best == 0.8 && corners,
          fmt::format("{} mismatches on the 9x9 grid, max p = {} at {} point(s) "
                      "(exact, max 0.8 at (4,0) and (0,4))",
                      mismatches, best, argmax.size())};
}

Outcome weighted_mean_properties() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> mean(0.0, 4.0);
  int bound_failures = 0;
  double worst_split = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<EntityPolarity> ps;
    const int n = 1 + static_cast<int>(rng() % 50);
    for (int i = 0; i < n; ++i)
      ps.push_back({fmt::format("e{}", i), entity_polarization(mean(rng), mean(rng)),
                    2 + rng() % 100000});
    const double total = corpus_polarization(ps).p_total;
    auto [lo, hi] = std::minmax_element(ps.begin(), ps.end(), [](auto& a, auto& b) {
      return a.p < b.p;
    });
    if (!(lo->p <= total && total <= hi->p)) ++bound_failures;

    auto split = ps;
    const std::size_t k = rng() % split.size();
    const std::uint64_t part = 1 + rng() % (split[k].weight - 1);
    split.push_back({split[k].entity_name + "#2", split[k].p, split[k].weight - part});
    split[k].weight = part;
    worst_split =
        std::max(worst_split, std::fabs(corpus_polarization(split).p_total - total));
  }
  return {bound_failures == 0 && worst_split <= 1e-12,
          fmt::format("{} bound violations in 1000 lists, max split drift {:.3g} "
                      "(min <= p_total <= max, tol 1e-12)",
                      bound_failures, worst_split)};
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  return out;
}

std::string second_line(const std::string& s) {
  auto a = s.find('\n');
  return s.substr(a + 1, s.find('\n', a + 1) - a - 1);
}

Outcome party_swap_symmetry() {
  TempDir dir;
  auto spec = medium_spec(31);
  write_bundle_for(spec, dir / "orig");
  fs::copy(dir / "orig", dir / "swap", fs::copy_options::recursive);
  std::string roster = read_file(dir / "orig" / "roster.csv");
  std::string swapped;
  std::stringstream in(roster);
  std::string line;
  while (std::getline(in, line)) {
    if (line.ends_with(",D")) line.back() = 'R';
    else if (line.ends_with(",R")) line.back() = 'D';
    swapped += line + "\n";
  }
  write_file(dir / "swap" / "roster.csv", swapped);

  auto a = run_pipeline(bundle_config(dir / "orig", dir / "oa"));
  auto b = run_pipeline(bundle_config(dir / "swap", dir / "ob"));
  const auto& ra = *a.report;
  const auto& rb = *b.report;

  bool mentions_swapped = a.stage.rows.size() == b.stage.rows.size();
  for (std::size_t i = 0; mentions_swapped && i < a.stage.rows.size(); ++i)
    mentions_swapped = a.stage.rows[i].party == opposite(b.stage.rows[i].party);

  bool entities_identical = read_file(dir / "oa" / "entities.csv") ==
                            read_file(dir / "ob" / "entities.csv");
  for (auto [x, y] : {std::pair{&ra.baseline, &rb.baseline},
                      std::pair{&ra.crisis, &rb.crisis}}) {
    entities_identical = entities_identical && x->entities.size() == y->entities.size();
    for (std::size_t i = 0; entities_identical && i < x->entities.size(); ++i)
      entities_identical = x->entities[i] == y->entities[i];
  }
  const bool totals_identical =
      ra.baseline.polarization.p_total == rb.baseline.polarization.p_total &&
      ra.crisis.polarization.p_total == rb.crisis.polarization.p_total &&
      ra.delta_pp == rb.delta_pp;

  auto fa = csv_fields(second_line(read_file(dir / "oa" / "report.csv")));
  auto fb = csv_fields(second_line(read_file(dir / "ob" / "report.csv")));
  const bool columns = fa.size() == 8 && fb.size() == 8 && fa[5] == fb[5] &&
                       fa[6] == fb[6] && fa[7] == fb[7] && fa[1] == fb[3] &&
                       fa[2] == fb[4] && fa[3] == fb[1] && fa[4] == fb[2];
  const bool sentiments_swapped = ra.baseline.avg_dem_sentiment == rb.baseline.avg_rep_sentiment &&
                                  ra.crisis.avg_rep_sentiment == rb.crisis.avg_dem_sentiment;
  return {mentions_swapped && entities_identical && totals_identical && columns &&
              sentiments_swapped,
          fmt::format("mention parties swapped: {}, every p bit-identical: {}, "
                      "p_total bit-identical: {}, report columns ok: {}",
                      mentions_swapped, entities_identical, totals_identical,
                      columns && sentiments_swapped)};
}

Outcome sharding_and_shuffling() {
  TempDir dir;
  auto spec = medium_spec(77);
  write_bundle_for(spec, dir / "bundle");
  std::vector<std::string> lines;
  {
    std::ifstream in(dir / "bundle" / "tweets.jsonl");
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }
  std::string reference;
  int runs = 0, differing = 0;
  for (std::uint64_t shuffle_seed : {1u, 2u, 3u}) {
    auto order = lines;
    std::mt19937_64 rng(shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
    const fs::path b = dir / fmt::format("s{}", shuffle_seed);
    fs::copy(dir / "bundle", b, fs::copy_options::recursive);
    std::string content;
    for (const auto& l : order) content += l + "\n";
    write_file(b / "tweets.jsonl", content);
    for (unsigned shards : {1u, 2u, 8u}) {
      const fs::path out = dir / fmt::format("o{}_{}", shuffle_seed, shards);
      run_pipeline(bundle_config(b, out, shards));
      auto report = read_file(out / "report.csv");
      if (reference.empty()) reference = report;
      differing += report != reference;
      ++runs;
    }
  }
  return {differing == 0 && runs == 9,
          fmt::format("{} of {} runs (shards 1/2/8 x 3 shuffles, {} tweets) differ "
                      "from the first report.csv (byte-identical)",
                      differing, runs, lines.size())};
}

Outcome statistical_recovery() {
  PlantedSpec spec;
  spec.seed = 1;
  spec.users_per_party = 500;
  spec.windows = testing::covid_windows();
  const SentimentDist dists[] = {{0.05, 0.2, 0.5, 0.2, 0.05}, {0.0, 0.1, 0.3, 0.4, 0.2},
                                 {0.3, 0.3, 0.2, 0.1, 0.1},   {0.2, 0.2, 0.2, 0.2, 0.2},
                                 {0.1, 0.2, 0.4, 0.2, 0.1}};
  const char* names[] = {"Donald Trump", "Joe Biden", "Nancy Pelosi", "Mitch McConnell",
                         "New York",     "Wuhan",     "Texas",        "California",
                         "CDC",          "White House"};
  for (int i = 0; i < 10; ++i)
    spec.entities.push_back(PlantedEntity{names[i], i < 4 ? "PERSON" : "LOCATION",
                                          dists[i % 5], dists[(i * 3 + 1) % 5], 10000,
                                          PlantedWindow::kBaseline});
  // The crisis window needs a joint entity for the report to exist.
  spec.entities.push_back(
      PlantedEntity{"Anchor", "MISC", point(2), point(2), 1, PlantedWindow::kCrisis});

  TempDir dir;
  auto bundle = synth::generate_corpus(spec);
  synth::write_bundle(bundle, spec, dir / "bundle");
  auto t0 = Clock::now();
  auto result = run_pipeline(bundle_config(dir / "bundle", dir / "out", 4));
  const double elapsed = seconds_since(t0);

  double worst = 0;
  std::size_t checked = 0;
  for (const auto& e : result.report->baseline.entities) {
    for (const auto& t : bundle.truth.baseline.entities) {
      if (t.name != e.entity_name) continue;
      worst = std::max(worst, std::fabs(e.p - t.expected_p));
      ++checked;
    }
  }
  return {checked == 10 && worst <= 0.01 && elapsed < 60.0,
          fmt::format("max |p - expected p| = {:.4f} over {} entities, {:.1f} s "
                      "(tol 0.01, < 60 s)",
                      worst, checked, elapsed)};
}

Outcome scenario_rendering() {
  PlantedSpec spec;
  spec.seed = 2020;
  spec.users_per_party = 20;
  spec.windows = testing::covid_windows();
  // Baseline: p = 0.2 on weight 42 and p = 0 on weight 358 -> 8.4 / 400.
  // Crisis: p = 0.2 on weight 138 and p = 0 on weight 262 -> 27.6 / 400.
  spec.entities = {
      {"Alpha", "MISC", point(3), point(2), 21, PlantedWindow::kBaseline},
      {"Beta", "MISC", point(2), point(2), 179, PlantedWindow::kBaseline},
      {"Gamma", "MISC", point(3), point(2), 69, PlantedWindow::kCrisis},
      {"Delta", "MISC", point(2), point(2), 131, PlantedWindow::kCrisis}};
  TempDir dir;
  write_bundle_for(spec, dir / "bundle");
  run_pipeline(bundle_config(dir / "bundle", dir / "out"));
  auto f = csv_fields(second_line(read_file(dir / "out" / "report.csv")));
  const bool ok = f.size() == 8 && f[0] == "COVID-19" && f[5] == "2.1%" &&
                  f[6] == "6.9%" && f[7] == "+4.8pp";
  return {ok, fmt::format("report row renders {} / {} / {} (want 2.1% / 6.9% / +4.8pp)",
                          f.size() > 5 ? f[5] : "?", f.size() > 6 ? f[6] : "?",
                          f.size() > 7 ? f[7] : "?")};
}

Outcome throughput() {
  PlantedSpec spec;
  spec.seed = 5;
  spec.users_per_party = 5000;
  spec.windows = testing::covid_windows();
  const char* names[] = {"Donald Trump", "Joe Biden", "Nancy Pelosi", "Mitch McConnell",
                         "New York",     "Wuhan",     "Texas",        "California",
                         "CDC",          "White House"};
  for (int i = 0; i < 10; ++i)
    spec.entities.push_back(PlantedEntity{names[i], i < 4 ? "PERSON" : "LOCATION",
                                          {0.1, 0.2, 0.4, 0.2, 0.1},
                                          {0.2, 0.3, 0.3, 0.1, 0.1}, 12500,
                                          PlantedWindow::kBoth});
  TempDir dir;
  auto bundle = synth::generate_corpus(spec);
  const std::size_t n = bundle.tweets.size();
  synth::write_bundle(bundle, spec, dir / "bundle");
  bundle = {};
  const unsigned shards = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  auto t0 = Clock::now();
  run_pipeline(bundle_config(dir / "bundle", dir / "out", shards));
  const double elapsed = seconds_since(t0);
  return {n == 500000 && elapsed < 120.0,
          fmt::format("{} tweets in {:.1f} s with {} shard(s) (< 120 s)", n, elapsed,
                      shards)};
}

Outcome tie_discard() {
  TempDir dir;
  auto spec = medium_spec(8);
  write_bundle_for(spec, dir / "bundle");
  const fs::path b = dir / "bundle";
  auto roster = load_affiliation_data(b / "roster.csv", b / "followers");
  std::set<std::string> users;
  for (const auto& [handle, followers] : roster.followers)
    users.insert(followers.begin(), followers.end());
  std::string everyone;
  for (const auto& u : users) everyone += u + "\n";
  // Every user follows every figurehead, so f_d = f_r = 3 for all of them.
  for (const auto& [handle, party] : roster.figureheads)
    write_file(b / "followers" / (handle + ".txt"), everyone);

  const std::string cmd = fmt::format(
      "run --tweets {} --roster {} --followers {} --lexicon {} --gazetteer {} "
      "--windows {} --out {}",
      (b / "tweets.jsonl").string(), (b / "roster.csv").string(),
      (b / "followers").string(), (b / "lexicon.tsv").string(),
      (b / "gazetteer.tsv").string(), (b / "windows.json").string(),
      (dir / "out").string());
  const int code = testing::run_cli(cmd);
  std::size_t rows = std::numeric_limits<std::size_t>::max();
  if (fs::exists(dir / "out" / "mentions.csv")) {
    auto content = read_file(dir / "out" / "mentions.csv");
    rows = static_cast<std::size_t>(std::count(content.begin(), content.end(), '\n')) - 1;
  }
  return {code == exit_code::kNoJointEntities && rows == 0,
          fmt::format("{} users all tied: exit code {}, {} mention rows (want 3 and 0)",
                      users.size(), code, rows)};
}

}  // namespace
}  // namespace partisan

int main() {
  using partisan::Outcome;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"Oracle equivalence", partisan::oracle_equivalence},
      {"Formula fidelity", partisan::formula_fidelity},
      {"Weighted-mean properties", partisan::weighted_mean_properties},
      {"Party-swap symmetry", partisan::party_swap_symmetry},
      {"Determinism under sharding and shuffling", partisan::sharding_and_shuffling},
      {"Statistical recovery", partisan::statistical_recovery},
      {"Rendering of the 2.1% / 6.9% scenario", partisan::scenario_rendering},
      {"Throughput", partisan::throughput},
      {"Tie-discard conformance", partisan::tie_discard},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail
              << std::endl;
  }
  std::cout << fmt::format("{} of {} criteria passed\n",
                           std::size(criteria) - static_cast<std::size_t>(failures),
                           std::size(criteria));
  return failures == 0 ? 0 : 1;
}
