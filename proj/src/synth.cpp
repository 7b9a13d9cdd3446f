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

#include "partisan/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <fmt/format.h>

#include <json.hpp>

#include "partisan/annotator.hpp"
#include "partisan/error.hpp"
#include "partisan/text.hpp"

namespace partisan::synth {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Polarity vocabulary written to lexicon.tsv.
const std::vector<std::pair<std::string, int>> kLexicon = {
    {"great", 2}, {"good", 1}, {"bad", -1}, {"awful", -2}};

// Phrases whose deltas sum to (sentiment - 2), indexed by sentiment.
const std::array<std::vector<std::string>, 5> kPolarityPhrases = {{
    {"awful", "bad bad"},
    {"bad", "awful good"},
    {"", "good bad"},
    {"good", "great bad"},
    {"great", "good good"},
}};

const std::vector<std::string> kFiller = {
    "today", "people", "news", "really", "about",
    "this",  "the",    "with", "on",     "again"};

const std::string kLink = "is";

constexpr std::size_t kFigureheadsPerParty = 3;

bool reserved_token(const std::string& t) {
  if (t == kLink) return true;
  if (std::find(kFiller.begin(), kFiller.end(), t) != kFiller.end()) return true;
  return std::any_of(kLexicon.begin(), kLexicon.end(),
                     [&](const auto& e) { return e.first == t; });
}

std::string handle_name(Party p, std::size_t i) {
  return fmt::format("{}_figurehead_{}", p == Party::kDemocrat ? "dem" : "rep",
                     i + 1);
}

std::string user_name(char prefix, std::uint64_t i) {
  return fmt::format("{}{:06d}", prefix, i + 1);
}

std::string_view window_name(PlantedWindow w) {
  switch (w) {
    case PlantedWindow::kBaseline:
      return "baseline";
    case PlantedWindow::kCrisis:
      return "crisis";
    case PlantedWindow::kBoth:
      return "both";
  }
  return "both";
}

}  // namespace

bool PlantedEntity::planted_in(WindowLabel w) const {
  if (w == WindowLabel::kOutside) return false;
  if (window == PlantedWindow::kBoth) return true;
  return (window == PlantedWindow::kBaseline) == (w == WindowLabel::kBaseline);
}

// --- RNG ------------------------------------------------------------------

std::uint64_t Random::uniform(std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    std::uint64_t x = engine_();
    if (x >= threshold) return x % n;
  }
}

double Random::unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int Random::categorical(const SentimentDist& dist) {
  const double u = unit();
  double cumulative = 0.0;
  int last_positive = 0;
  for (int i = 0; i < 5; ++i) {
    if (dist[i] <= 0.0) continue;
    cumulative += dist[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  return last_positive;
}

// --- spec -----------------------------------------------------------------

void PlantedSpec::validate() const {
  if (entities.empty()) throw ConfigError("planted spec has no entities");
  if (users_per_party == 0) throw ConfigError("users_per_party must be positive");
  try {
    windows.validate();
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  const auto policy = EntityTypePolicy::defaults();
  std::set<std::string> names;
  for (const auto& e : entities) {
    if (e.mentions_per_party == 0) {
      throw ConfigError("entity '" + e.name + "' has zero mentions_per_party");
    }
    for (const auto* dist : {&e.dem, &e.rep}) {
      double sum = 0.0;
      for (double q : *dist) {
        if (!(q >= 0.0)) {
          throw ConfigError("entity '" + e.name + "' has a negative probability");
        }
        sum += q;
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError(fmt::format(
            "entity '{}' distribution sums to {}, not 1", e.name, sum));
      }
    }
    if (!policy.accepts(e.type)) {
      throw ConfigError("entity '" + e.name + "' has type " + e.type +
                        ", which the default policy does not accept");
    }
    bool has_letter = false;
    for (char c : e.name) {
      const bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                         (c >= '0' && c <= '9');
      if (!alnum && c != ' ') {
        throw ConfigError("entity name '" + e.name +
                          "' may only contain ASCII letters, digits and spaces");
      }
      has_letter |= alnum;
    }
    if (!has_letter) throw ConfigError("empty entity name");
    for (const auto& tok : text::lower_tokens(e.name)) {
      if (reserved_token(tok)) {
        throw ConfigError("entity name '" + e.name + "' uses reserved word '" +
                          tok + "'");
      }
    }
    auto normalized = text::collapse_whitespace(text::to_lower(e.name));
    if (!names.insert(normalized).second) {
      throw ConfigError("duplicate entity name '" + normalized + "'");
    }
  }
}

namespace {

SentimentDist read_dist(const json& j, const char* key, std::string_view source) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array() || it->size() != 5) {
    throw ConfigError(fmt::format("{}: '{}' must be an array of 5 numbers",
                                  source, key));
  }
  SentimentDist d{};
  for (std::size_t i = 0; i < 5; ++i) {
    if (!(*it)[i].is_number()) {
      throw ConfigError(fmt::format("{}: '{}' must hold numbers", source, key));
    }
    d[i] = (*it)[i].get<double>();
  }
  return d;
}

std::uint64_t read_count(const json& j, const char* key, std::string_view source,
                         std::optional<std::uint64_t> fallback) {
  auto it = j.find(key);
  if (it == j.end()) {
    if (fallback) return *fallback;
    throw ConfigError(fmt::format("{}: missing '{}'", source, key));
  }
  if (!it->is_number_unsigned()) {
    throw ConfigError(
        fmt::format("{}: '{}' must be a nonnegative integer", source, key));
  }
  return it->get<std::uint64_t>();
}

}  // namespace

PlantedSpec parse_planted_spec(std::string_view json_text,
                               std::string_view source) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ConfigError(fmt::format("{}: not a JSON object", source));
  }
  PlantedSpec spec;
  spec.seed = read_count(j, "seed", source, 0);
  spec.users_per_party = read_count(j, "users_per_party", source, std::nullopt);
  spec.unaligned_users = read_count(j, "unaligned_users", source, 0);
  spec.deleted_tweets = read_count(j, "deleted_tweets", source, 0);
  spec.outside_tweets = read_count(j, "outside_tweets", source, 0);
  auto windows = j.find("windows");
  if (windows == j.end() || !windows->is_object()) {
    throw ConfigError(fmt::format("{}: missing object 'windows'", source));
  }
  try {
    spec.windows = parse_windows(windows->dump(), source);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  auto entities = j.find("entities");
  if (entities == j.end() || !entities->is_array()) {
    throw ConfigError(fmt::format("{}: missing array 'entities'", source));
  }
  for (const auto& je : *entities) {
    if (!je.is_object()) throw ConfigError(fmt::format("{}: bad entity", source));
    PlantedEntity e;
    if (!je.contains("name") || !je["name"].is_string()) {
      throw ConfigError(fmt::format("{}: entity needs a string 'name'", source));
    }
    e.name = je["name"].get<std::string>();
    e.type = je.value("type", std::string("MISC"));
    e.dem = read_dist(je, "dem", source);
    e.rep = read_dist(je, "rep", source);
    e.mentions_per_party = read_count(je, "mentions_per_party", source, std::nullopt);
    auto w = je.value("window", std::string("both"));
    if (w == "both") {
      e.window = PlantedWindow::kBoth;
    } else if (w == "baseline") {
      e.window = PlantedWindow::kBaseline;
    } else if (w == "crisis") {
      e.window = PlantedWindow::kCrisis;
    } else {
      throw ConfigError(fmt::format("{}: unknown window '{}'", source, w));
    }
    spec.entities.push_back(std::move(e));
  }
  spec.validate();
  return spec;
}

PlantedSpec load_planted_spec(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open planted spec " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return parse_planted_spec(content, path.string());
}

std::string planted_spec_to_json(const PlantedSpec& spec) {
  json entities = json::array();
  for (const auto& e : spec.entities) {
    entities.push_back({{"name", e.name},
                        {"type", e.type},
                        {"dem", e.dem},
                        {"rep", e.rep},
                        {"mentions_per_party", e.mentions_per_party},
                        {"window", window_name(e.window)}});
  }
  json j = {{"seed", spec.seed},
            {"users_per_party", spec.users_per_party},
            {"unaligned_users", spec.unaligned_users},
            {"deleted_tweets", spec.deleted_tweets},
            {"outside_tweets", spec.outside_tweets},
            {"windows", json::parse(windows_to_json(spec.windows))},
            {"entities", std::move(entities)}};
  return j.dump(2) + "\n";
}

// --- oracle ---------------------------------------------------------------

PlantedTruth planted_oracle(const PlantedSpec& spec, const Realization& realized) {
  struct Sums {
    double dem_sum = 0, rep_sum = 0;
    std::uint64_t dem_n = 0, rep_n = 0;
  };
  PlantedTruth truth;
  for (WindowLabel w : {WindowLabel::kBaseline, WindowLabel::kCrisis}) {
    std::vector<Sums> sums(spec.entities.size());
    for (const auto& m : realized.mentions) {
      if (m.window != w) continue;
      auto& s = sums[m.entity];
      if (m.party == Party::kDemocrat) {
        s.dem_sum += m.sentiment;
        ++s.dem_n;
      } else {
        s.rep_sum += m.sentiment;
        ++s.rep_n;
      }
    }
    WindowTruth out;
    double weighted = 0, expected_weighted = 0, total = 0;
    for (std::size_t i = 0; i < spec.entities.size(); ++i) {
      const auto& e = spec.entities[i];
      const auto& s = sums[i];
      if (s.dem_n == 0 || s.rep_n == 0) continue;
      EntityTruth t;
      t.name = text::collapse_whitespace(text::to_lower(e.name));
      t.s_d = s.dem_sum / static_cast<double>(s.dem_n);
      t.s_r = s.rep_sum / static_cast<double>(s.rep_n);
      t.p = std::fabs(t.s_d - t.s_r) / 5.0;
      t.weight = s.dem_n + s.rep_n;
      for (int k = 0; k < 5; ++k) {
        t.expected_s_d += k * e.dem[k];
        t.expected_s_r += k * e.rep[k];
      }
      t.expected_p = std::fabs(t.expected_s_d - t.expected_s_r) / 5.0;
      weighted += t.p * static_cast<double>(t.weight);
      expected_weighted += t.expected_p * static_cast<double>(t.weight);
      total += static_cast<double>(t.weight);
      out.entities.push_back(std::move(t));
    }
    std::sort(out.entities.begin(), out.entities.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    if (total > 0) {
      out.p_total = weighted / total;
      out.expected_p_total = expected_weighted / total;
    }
    (w == WindowLabel::kBaseline ? truth.baseline : truth.crisis) = std::move(out);
  }
  return truth;
}

// --- generation -----------------------------------------------------------

Realization sample_realization(const PlantedSpec& spec) {
  spec.validate();
  Random rng(spec.seed);
  Realization r;
  for (WindowLabel w : {WindowLabel::kBaseline, WindowLabel::kCrisis}) {
    for (std::size_t i = 0; i < spec.entities.size(); ++i) {
      const auto& e = spec.entities[i];
      if (!e.planted_in(w)) continue;
      for (Party p : {Party::kDemocrat, Party::kRepublican}) {
        const auto& dist = (p == Party::kDemocrat) ? e.dem : e.rep;
        for (std::uint64_t k = 0; k < e.mentions_per_party; ++k) {
          r.mentions.push_back({w, i, p, rng.categorical(dist)});
        }
      }
    }
  }
  return r;
}

namespace {

// k distinct indices from [0, n) by partial Fisher-Yates.
std::vector<std::size_t> choose(Random& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    auto j = i + rng.uniform(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

std::string render_surface(Random& rng, const std::string& name) {
  switch (rng.uniform(4)) {
    case 0:
      return name;
    case 1:
      return text::to_lower(name);
    case 2: {
      std::string s = name;
      for (auto& c : s) {
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 32);
      }
      return s;
    }
    default: {
      std::string s = text::to_lower(name);
      bool start = true;
      for (auto& c : s) {
        if (start && c >= 'a' && c <= 'z') c = static_cast<char>(c - 32);
        start = (c == ' ');
      }
      return s;
    }
  }
}

std::string render_sentence(Random& rng, const std::string& name, int sentiment) {
  const auto& phrases = kPolarityPhrases[static_cast<std::size_t>(sentiment)];
  std::string out = kFiller[rng.uniform(kFiller.size())];
  out += ' ';
  out += render_surface(rng, name);
  out += ' ';
  out += kLink;
  const auto& phrase = phrases[rng.uniform(phrases.size())];
  if (!phrase.empty()) {
    out += ' ';
    out += phrase;
  }
  out += ' ';
  out += kFiller[rng.uniform(kFiller.size())];
  out += '.';
  return out;
}

Timestamp random_time(Random& rng, const Interval& in) {
  auto span = static_cast<std::uint64_t>(in.duration().count());
  return in.start + std::chrono::seconds(static_cast<std::int64_t>(rng.uniform(span)));
}

}  // namespace

CorpusBundle generate_corpus(const PlantedSpec& spec) {
  CorpusBundle b;
  b.realization = sample_realization(spec);
  b.truth = planted_oracle(spec, b.realization);
  Random rng(spec.seed ^ 0x9E3779B97F4A7C15ULL);

  // Roster and follow graph.
  for (Party p : {Party::kDemocrat, Party::kRepublican}) {
    for (std::size_t i = 0; i < kFigureheadsPerParty; ++i) {
      b.roster.figureheads[handle_name(p, i)] = p;
      b.roster.followers[handle_name(p, i)];
    }
  }
  auto follow = [&](const std::string& user, Party p, std::size_t k) {
    for (auto i : choose(rng, kFigureheadsPerParty, k)) {
      b.roster.followers[handle_name(p, i)].insert(user);
    }
  };
  std::array<std::vector<std::string>, 2> users;
  for (Party p : {Party::kDemocrat, Party::kRepublican}) {
    auto& list = users[static_cast<std::size_t>(p)];
    for (std::uint64_t i = 0; i < spec.users_per_party; ++i) {
      auto name = user_name(p == Party::kDemocrat ? 'd' : 'r', i);
      auto own = 1 + rng.uniform(kFigureheadsPerParty);
      auto other = rng.uniform(own);
      follow(name, p, own);
      follow(name, opposite(p), other);
      list.push_back(std::move(name));
    }
  }
  std::vector<std::string> unaligned;
  for (std::uint64_t i = 0; i < spec.unaligned_users; ++i) {
    auto name = user_name('u', i);
    auto k = rng.uniform(kFigureheadsPerParty + 1);
    follow(name, Party::kDemocrat, k);
    follow(name, Party::kRepublican, k);
    unaligned.push_back(std::move(name));
  }

  auto interval = [&](WindowLabel w) -> const Interval& {
    return w == WindowLabel::kBaseline ? spec.windows.baseline : spec.windows.crisis;
  };
  auto aligned_author = [&](Party p) -> const std::string& {
    const auto& list = users[static_cast<std::size_t>(p)];
    return list[rng.uniform(list.size())];
  };

  std::vector<TweetRecord> tweets;
  tweets.reserve(b.realization.mentions.size() + spec.unaligned_users +
                 spec.deleted_tweets + spec.outside_tweets);
  for (const auto& m : b.realization.mentions) {
    TweetRecord t;
    t.user_id = aligned_author(m.party);
    t.created_at = random_time(rng, interval(m.window));
    t.text = render_sentence(rng, spec.entities[m.entity].name, m.sentiment);
    tweets.push_back(std::move(t));
  }

  // Noise picks entities planted in the chosen window.
  auto random_entity = [&](WindowLabel w) -> const PlantedEntity* {
    std::vector<const PlantedEntity*> pool;
    for (const auto& e : spec.entities) {
      if (e.planted_in(w)) pool.push_back(&e);
    }
    return pool.empty() ? nullptr : pool[rng.uniform(pool.size())];
  };
  auto random_window = [&] {
    return rng.uniform(2) == 0 ? WindowLabel::kBaseline : WindowLabel::kCrisis;
  };
  auto noise_tweet = [&](const std::string& user, WindowLabel w, Timestamp at) {
    const auto* e = random_entity(w);
    if (!e) e = &spec.entities.front();
    TweetRecord t;
    t.user_id = user;
    t.created_at = at;
    t.text = render_sentence(rng, e->name, static_cast<int>(rng.uniform(5)));
    return t;
  };
  for (const auto& user : unaligned) {
    auto w = random_window();
    tweets.push_back(noise_tweet(user, w, random_time(rng, interval(w))));
  }
  for (std::uint64_t i = 0; i < spec.deleted_tweets; ++i) {
    auto w = random_window();
    auto p = rng.uniform(2) == 0 ? Party::kDemocrat : Party::kRepublican;
    auto t = noise_tweet(aligned_author(p), w, random_time(rng, interval(w)));
    t.deleted = true;
    tweets.push_back(std::move(t));
  }
  for (std::uint64_t i = 0; i < spec.outside_tweets; ++i) {
    Interval gap{spec.windows.baseline.end, spec.windows.crisis.start};
    if (gap.start == gap.end) {
      gap = {spec.windows.baseline.start - std::chrono::days(7),
             spec.windows.baseline.start};
    }
    auto p = rng.uniform(2) == 0 ? Party::kDemocrat : Party::kRepublican;
    tweets.push_back(
        noise_tweet(aligned_author(p), random_window(), random_time(rng, gap)));
  }

  for (std::size_t i = tweets.size(); i > 1; --i) {
    std::swap(tweets[i - 1], tweets[rng.uniform(i)]);
  }
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    tweets[i].tweet_id = fmt::format("t{:08d}", i + 1);
  }
  b.tweets = std::move(tweets);

  b.lexicon = kLexicon;
  for (const auto& e : spec.entities) {
    b.gazetteer.emplace_back(text::collapse_whitespace(text::to_lower(e.name)),
                             e.type);
  }
  return b;
}

// --- output ---------------------------------------------------------------

namespace {

json window_truth_json(const WindowTruth& w) {
  json entities = json::array();
  for (const auto& e : w.entities) {
    entities.push_back({{"name", e.name},
                        {"s_d", e.s_d},
                        {"s_r", e.s_r},
                        {"p", e.p},
                        {"weight", e.weight},
                        {"expected_s_d", e.expected_s_d},
                        {"expected_s_r", e.expected_s_r},
                        {"expected_p", e.expected_p}});
  }
  json j = {{"entities", std::move(entities)}};
  j["p_total"] = w.p_total ? json(*w.p_total) : json(nullptr);
  j["expected_p_total"] =
      w.expected_p_total ? json(*w.expected_p_total) : json(nullptr);
  return j;
}

std::ofstream open(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

}  // namespace

std::string truth_to_json(const PlantedTruth& truth) {
  json j = {{"baseline", window_truth_json(truth.baseline)},
            {"crisis", window_truth_json(truth.crisis)}};
  return j.dump(2) + "\n";
}

void write_bundle(const CorpusBundle& b, const PlantedSpec& spec,
                  const fs::path& dir) {
  fs::create_directories(dir / "followers");
  {
    auto out = open(dir / "tweets.jsonl");
    for (const auto& t : b.tweets) out << to_json_line(t) << '\n';
  }
  {
    auto out = open(dir / "roster.csv");
    out << "handle,party\n";
    for (const auto& [handle, party] : b.roster.figureheads) {
      out << handle << ',' << (party == Party::kDemocrat ? 'D' : 'R') << '\n';
    }
  }
  for (const auto& [handle, followers] : b.roster.followers) {
    auto out = open(dir / "followers" / (handle + ".txt"));
    for (const auto& u : followers) out << u << '\n';
  }
  {
    auto out = open(dir / "lexicon.tsv");
    for (const auto& [token, delta] : b.lexicon) out << token << '\t' << delta << '\n';
  }
  {
    auto out = open(dir / "gazetteer.tsv");
    for (const auto& [surface, type] : b.gazetteer) {
      out << surface << '\t' << type << '\n';
    }
  }
  open(dir / "windows.json") << windows_to_json(spec.windows);
  open(dir / "truth.json") << truth_to_json(b.truth);
  open(dir / "spec.json") << planted_spec_to_json(spec);
}

}  // namespace partisan::synth
