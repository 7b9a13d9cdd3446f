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

#include "partisan/annotator.hpp"

#include <algorithm>
#include <charconv>

#include <fmt/format.h>

#include <json.hpp>

#include "partisan/error.hpp"

namespace partisan {

using json = nlohmann::json;

// --- resources ------------------------------------------------------------

void Lexicon::add(std::string_view token, int delta) {
  if (delta == 0) throw DataError("zero delta for token '" + std::string(token) + "'");
  if (delta < -2 || delta > 2) {
    throw DataError(fmt::format("delta {} out of range for token '{}'", delta,
                                token));
  }
  auto tokens = text::tokenize(token);
  if (tokens.size() != 1 || tokens[0].begin != 0 ||
      tokens[0].end != token.size()) {
    throw DataError("lexicon token '" + std::string(token) +
                    "' is not a single word");
  }
  if (!deltas_.emplace(std::move(tokens[0].lower), delta).second) {
    throw DataError("duplicate lexicon token '" + std::string(token) + "'");
  }
}

std::optional<int> Lexicon::delta(const std::string& lower_token) const {
  auto it = deltas_.find(lower_token);
  if (it == deltas_.end()) return std::nullopt;
  return it->second;
}

Gazetteer::Gazetteer() : nodes_(1) {}

namespace {

bool valid_entity_type(std::string_view t) {
  if (t.empty() || t[0] < 'A' || t[0] > 'Z') return false;
  return std::all_of(t.begin(), t.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace

void Gazetteer::add(std::string_view surface, std::string_view entity_type) {
  auto tokens = text::tokenize(surface);
  if (tokens.empty()) {
    throw DataError("gazetteer surface '" + std::string(surface) +
                    "' has no words");
  }
  if (!valid_entity_type(entity_type)) {
    throw DataError("invalid entity type '" + std::string(entity_type) + "'");
  }
  std::uint32_t node = 0;
  for (auto& tok : tokens) {
    auto it = nodes_[node].children.find(tok.lower);
    if (it == nodes_[node].children.end()) {
      auto next = static_cast<std::uint32_t>(nodes_.size());
      nodes_[node].children.emplace(std::move(tok.lower), next);
      nodes_.emplace_back();
      node = next;
    } else {
      node = it->second;
    }
  }
  if (nodes_[node].type >= 0) {
    throw DataError("duplicate gazetteer surface '" + std::string(surface) + "'");
  }
  auto type_it = std::find(types_.begin(), types_.end(), entity_type);
  if (type_it == types_.end()) {
    types_.emplace_back(entity_type);
    type_it = types_.end() - 1;
  }
  nodes_[node].type = static_cast<int>(type_it - types_.begin());
  ++size_;
}

std::optional<Gazetteer::Match> Gazetteer::longest_match(
    std::span<const text::Token> tokens, std::size_t start) const {
  std::optional<Match> best;
  std::uint32_t node = 0;
  for (std::size_t i = start; i < tokens.size(); ++i) {
    const auto& children = nodes_[node].children;
    auto it = children.find(tokens[i].lower);
    if (it == children.end()) break;
    node = it->second;
    if (nodes_[node].type >= 0) {
      best = Match{i - start + 1, &types_[static_cast<std::size_t>(nodes_[node].type)]};
    }
  }
  return best;
}

namespace {

// Calls fn(line_no, key, value) for every "key<TAB>value" row.
template <typename Fn>
void read_tsv(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw LineError(source, line_no, "expected two tab-separated columns");
    }
    auto key = text::trim(std::string_view(line).substr(0, tab));
    auto value = text::trim(std::string_view(line).substr(tab + 1));
    try {
      fn(line_no, key, value);
    } catch (const LineError&) {
      throw;
    } catch (const DataError& e) {
      throw LineError(source, line_no, e.what());
    }
  }
}

}  // namespace

Lexicon parse_lexicon(std::istream& in, const std::string& source) {
  Lexicon lex;
  read_tsv(in, source, [&](std::size_t line_no, std::string_view token,
                           std::string_view value) {
    int delta = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(),
                                     delta);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw LineError(source, line_no, "invalid delta '" + std::string(value) + "'");
    }
    lex.add(token, delta);
  });
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon " + path.string());
  return parse_lexicon(in, path.string());
}

Gazetteer parse_gazetteer(std::istream& in, const std::string& source) {
  Gazetteer gaz;
  read_tsv(in, source,
           [&](std::size_t, std::string_view surface, std::string_view type) {
             gaz.add(surface, type);
           });
  return gaz;
}

Gazetteer load_gazetteer(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open gazetteer " + path.string());
  return parse_gazetteer(in, path.string());
}

EntityTypePolicy EntityTypePolicy::defaults() {
  return EntityTypePolicy{
      {"LOCATION", "MISC", "PERSON"},
      {"EMAIL", "DATE", "NUMBER", "PERCENT", "TIME", "MONEY", "URL"}};
}

EntityTypePolicy EntityTypePolicy::with_allowlist(std::string_view list) {
  EntityTypePolicy policy = defaults();
  policy.allowlist.clear();
  while (!list.empty()) {
    auto comma = list.find(',');
    auto item = text::trim(list.substr(0, comma));
    if (!item.empty()) policy.allowlist.emplace(item);
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  policy.validate();
  return policy;
}

void EntityTypePolicy::validate() const {
  if (allowlist.empty()) throw ConfigError("entity type allowlist is empty");
  for (const auto& t : allowlist) {
    if (denylist.contains(t)) {
      throw ConfigError("entity type " + t + " is both allowed and denied");
    }
  }
}

// --- reference annotator --------------------------------------------------

std::vector<std::string> split_sentences(std::string_view input) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  auto flush = [&](std::size_t end) {
    auto s = text::trim(input.substr(begin, end - begin));
    if (!s.empty()) out.emplace_back(s);
    begin = end;
  };
  for (std::size_t i = 0; i < input.size(); ++i) {
    char c = input[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (i + 1 == input.size() || text::is_space(input[i + 1])) flush(i + 1);
  }
  flush(input.size());
  return out;
}

namespace {

int score_tokens(std::span<const text::Token> tokens, const Lexicon& lex) {
  long total = kNeutralSentiment;
  for (const auto& t : tokens) {
    if (auto d = lex.delta(t.lower)) total += *d;
  }
  return static_cast<int>(std::clamp<long>(total, kMinSentiment, kMaxSentiment));
}

std::vector<EntityMention> match_tokens(std::string_view sentence,
                                        std::span<const text::Token> tokens,
                                        const Gazetteer& gaz,
                                        const EntityTypePolicy& policy) {
  std::vector<EntityMention> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    auto m = gaz.longest_match(tokens, i);
    if (!m) {
      ++i;
      continue;
    }
    if (policy.accepts(*m->entity_type)) {
      auto b = tokens[i].begin;
      auto e = tokens[i + m->token_count - 1].end;
      out.push_back({std::string(sentence.substr(b, e - b)), *m->entity_type});
    }
    i += m->token_count;
  }
  return out;
}

}  // namespace

int score_sentence(std::string_view sentence, const Lexicon& lex) {
  return score_tokens(text::tokenize(sentence), lex);
}

std::vector<EntityMention> extract_entities(std::string_view sentence,
                                            const Gazetteer& gaz,
                                            const EntityTypePolicy& policy) {
  return match_tokens(sentence, text::tokenize(sentence), gaz, policy);
}

AnnotatedTweet annotate_tweet(const TweetRecord& t, const Lexicon& lex,
                              const Gazetteer& gaz,
                              const EntityTypePolicy& policy) {
  if (t.deleted) {
    throw ContractViolation("deleted tweet " + t.tweet_id +
                            " must not be annotated");
  }
  AnnotatedTweet out{t.tweet_id, t.user_id, {}};
  for (auto& sentence : split_sentences(t.text)) {
    auto tokens = text::tokenize(sentence);
    SentenceAnnotation s;
    s.sentiment = score_tokens(tokens, lex);
    s.entities = match_tokens(sentence, tokens, gaz, policy);
    s.text = std::move(sentence);
    out.sentences.push_back(std::move(s));
  }
  return out;
}

// --- pre-annotated adapter ------------------------------------------------

std::string to_preannotated_json(const AnnotatedTweet& a) {
  json sentences = json::array();
  for (const auto& s : a.sentences) {
    json entities = json::array();
    for (const auto& e : s.entities) {
      entities.push_back({{"surface", e.surface}, {"type", e.entity_type}});
    }
    sentences.push_back(
        {{"text", s.text}, {"sentiment", s.sentiment}, {"entities", entities}});
  }
  json j = {{"tweet_id", a.tweet_id},
            {"user_id", a.user_id},
            {"sentences", std::move(sentences)}};
  return j.dump();
}

AnnotatedTweet parse_preannotated_line(std::string_view line,
                                       const EntityTypePolicy& policy,
                                       const std::string& source,
                                       std::size_t line_no) {
  auto fail = [&](const std::string& what) {
    return LineError(source, line_no, what);
  };
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw fail("malformed JSON object");

  auto str = [&](const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
      throw fail(fmt::format("missing string field '{}'", key));
    }
    return it->get<std::string>();
  };

  AnnotatedTweet a;
  a.tweet_id = str(j, "tweet_id");
  a.user_id = str(j, "user_id");
  if (a.tweet_id.empty() || a.user_id.empty()) throw fail("empty id");
  auto sentences = j.find("sentences");
  if (sentences == j.end() || !sentences->is_array()) {
    throw fail("missing array 'sentences'");
  }
  for (const auto& js : *sentences) {
    if (!js.is_object()) throw fail("sentence must be an object");
    SentenceAnnotation s;
    s.text = str(js, "text");
    auto sent = js.find("sentiment");
    if (sent == js.end() || !sent->is_number_integer()) {
      throw fail("sentence sentiment must be an integer");
    }
    auto value = sent->get<long long>();
    if (value < kMinSentiment || value > kMaxSentiment) {
      throw fail(fmt::format("sentiment {} outside 0..4", value));
    }
    s.sentiment = static_cast<int>(value);
    auto entities = js.find("entities");
    if (entities != js.end()) {
      if (!entities->is_array()) throw fail("'entities' must be an array");
      auto lower_text = text::to_lower(s.text);
      for (const auto& je : *entities) {
        if (!je.is_object()) throw fail("entity must be an object");
        EntityMention e{str(je, "surface"), str(je, "type")};
        if (e.surface.empty()) throw fail("empty entity surface");
        if (lower_text.find(text::to_lower(e.surface)) == std::string::npos) {
          throw fail("entity '" + e.surface + "' does not occur in its sentence");
        }
        if (policy.accepts(e.entity_type)) s.entities.push_back(std::move(e));
      }
    }
    a.sentences.push_back(std::move(s));
  }
  return a;
}

PreannotatedReader::PreannotatedReader(const std::filesystem::path& path,
                                       EntityTypePolicy policy)
    : file_(path), in_(&file_), source_(path.string()), policy_(std::move(policy)) {
  if (!file_) throw DataError("cannot open pre-annotated file " + path.string());
}

PreannotatedReader::PreannotatedReader(std::istream& in, std::string source,
                                       EntityTypePolicy policy)
    : in_(&in), source_(std::move(source)), policy_(std::move(policy)) {}

std::optional<AnnotatedTweet> PreannotatedReader::next() {
  std::string line;
  while (std::getline(*in_, line)) {
    ++line_;
    if (text::trim(line).empty()) continue;
    return parse_preannotated_line(line, policy_, source_, line_);
  }
  return std::nullopt;
}

std::vector<AnnotatedTweet> ingest_preannotated(
    const std::filesystem::path& path, const EntityTypePolicy& policy) {
  PreannotatedReader reader(path, policy);
  std::vector<AnnotatedTweet> out;
  while (auto a = reader.next()) out.push_back(std::move(*a));
  return out;
}

}  // namespace partisan
