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

#ifndef PARTISAN_SYNTH_HPP_
#define PARTISAN_SYNTH_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "partisan/corpus.hpp"

namespace partisan::synth {

// Sentiment class probabilities for 0..4.
using SentimentDist = std::array<double, 5>;

enum class PlantedWindow { kBaseline, kCrisis, kBoth };

struct PlantedEntity {
  std::string name;
  std::string type;
  SentimentDist dem{};
  SentimentDist rep{};
  std::uint64_t mentions_per_party = 0;  // per window the entity is planted in
  PlantedWindow window = PlantedWindow::kBoth;

  bool planted_in(WindowLabel w) const;
};

struct PlantedSpec {
  std::vector<PlantedEntity> entities;
  std::uint64_t users_per_party = 0;
  EventWindows windows;
  std::uint64_t seed = 0;
  // Noise the pipeline must ignore.
  std::uint64_t unaligned_users = 0;  // tie followers, one tweet each
  std::uint64_t deleted_tweets = 0;
  std::uint64_t outside_tweets = 0;

  // Throws ConfigError when these settings cannot be generated faithfully.
  void validate() const;
};

PlantedSpec parse_planted_spec(std::string_view json_text, std::string_view source);
PlantedSpec load_planted_spec(const std::filesystem::path& path);
std::string planted_spec_to_json(const PlantedSpec& spec);

// One sampled mention sentiment.
struct RealizedMention {
  WindowLabel window = WindowLabel::kBaseline;
  std::size_t entity = 0;  // index into spec.entities
  Party party = Party::kDemocrat;
  int sentiment = 0;
};

struct Realization {
  std::vector<RealizedMention> mentions;
};

struct EntityTruth {
  std::string name;  // normalized
  double s_d = 0.0;
  double s_r = 0.0;
  double p = 0.0;
  std::uint64_t weight = 0;
  double expected_s_d = 0.0;
  double expected_s_r = 0.0;
  double expected_p = 0.0;
};

struct WindowTruth {
  std::vector<EntityTruth> entities;  // sorted by name
  std::optional<double> p_total;       // nullopt when nothing is planted
  std::optional<double> expected_p_total;
};

struct PlantedTruth {
  WindowTruth baseline;
  WindowTruth crisis;

  const WindowTruth& for_window(WindowLabel w) const {
    return w == WindowLabel::kCrisis ? crisis : baseline;
  }
};

// Flat recomputation over the realized samples; shares no code with the
// aggregation and polarization modules.
PlantedTruth planted_oracle(const PlantedSpec& spec, const Realization& realized);

// Draws every planted sentiment. This is the first phase of
// generate_corpus and consumes the seed the same way.
Realization sample_realization(const PlantedSpec& spec);

struct CorpusBundle {
  std::vector<TweetRecord> tweets;  // file order
  FigureheadRoster roster;
  std::vector<std::pair<std::string, int>> lexicon;
  std::vector<std::pair<std::string, std::string>> gazetteer;
  Realization realization;
  PlantedTruth truth;
};

CorpusBundle generate_corpus(const PlantedSpec& spec);

// tweets.jsonl, roster.csv, followers/, lexicon.tsv, gazetteer.tsv,
// windows.json, truth.json and spec.json under `dir`.
void write_bundle(const CorpusBundle& bundle, const PlantedSpec& spec,
                  const std::filesystem::path& dir);

std::string truth_to_json(const PlantedTruth& truth);

// The generator's sampling primitives, on std::mt19937_64 whose output
// sequence is fixed by the C++ standard.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n) by rejection; n > 0.
  std::uint64_t uniform(std::uint64_t n);
  // Uniform in [0, 1) with 53 random bits.
  double unit();
  // Index i with probability dist[i] (cumulative scan of unit()).
  int categorical(const SentimentDist& dist);

 private:
  std::mt19937_64 engine_;
};

}  // namespace partisan::synth

#endif  // PARTISAN_SYNTH_HPP_
