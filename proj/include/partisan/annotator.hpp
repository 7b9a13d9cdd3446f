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

#ifndef PARTISAN_ANNOTATOR_HPP_
#define PARTISAN_ANNOTATOR_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "partisan/corpus.hpp"
#include "partisan/text.hpp"

namespace partisan {

inline constexpr int kMinSentiment = 0;
inline constexpr int kMaxSentiment = 4;
inline constexpr int kNeutralSentiment = 2;

// Lowercase token -> delta in {-2, -1, +1, +2}.
class Lexicon {
 public:
  // Throws DataError for a zero or out-of-range delta, a token that is not a
  // single word, or a duplicate (after lowercasing).
  void add(std::string_view token, int delta);
  std::optional<int> delta(const std::string& lower_token) const;
  std::size_t size() const { return deltas_.size(); }

 private:
  std::unordered_map<std::string, int> deltas_;
};

// Lowercase surface form -> entity type, matched on token boundaries.
class Gazetteer {
 public:
  Gazetteer();

  // Throws DataError on an empty surface, a malformed type or a duplicate
  // token sequence.
  void add(std::string_view surface, std::string_view entity_type);
  std::size_t size() const { return size_; }

  struct Match {
    std::size_t token_count = 0;
    const std::string* entity_type = nullptr;
  };

  // Longest entry whose tokens equal tokens[start, start + k).
  std::optional<Match> longest_match(std::span<const text::Token> tokens,
                                     std::size_t start) const;

 private:
  struct Node {
    std::unordered_map<std::string, std::uint32_t> children;
    int type = -1;
  };
  std::vector<Node> nodes_;
  std::vector<std::string> types_;
  std::size_t size_ = 0;
};

Lexicon parse_lexicon(std::istream& in, const std::string& source);
Lexicon load_lexicon(const std::filesystem::path& path);
Gazetteer parse_gazetteer(std::istream& in, const std::string& source);
Gazetteer load_gazetteer(const std::filesystem::path& path);

struct EntityTypePolicy {
  std::set<std::string> allowlist;
  std::set<std::string> denylist;

  // Allow LOCATION, MISC, PERSON; deny EMAIL, DATE, NUMBER, PERCENT, TIME,
  // MONEY, URL.
  static EntityTypePolicy defaults();
  // Default denylist with a comma-separated allowlist. Throws ConfigError if
  // the two overlap or the list is empty.
  static EntityTypePolicy with_allowlist(std::string_view comma_separated);

  bool accepts(const std::string& entity_type) const {
    return allowlist.contains(entity_type) && !denylist.contains(entity_type);
  }
  void validate() const;
};

struct EntityMention {
  std::string surface;
  std::string entity_type;

  bool operator==(const EntityMention&) const = default;
};

struct SentenceAnnotation {
  std::string text;
  int sentiment = kNeutralSentiment;
  std::vector<EntityMention> entities;

  bool operator==(const SentenceAnnotation&) const = default;
};

struct AnnotatedTweet {
  std::string tweet_id;
  std::string user_id;
  std::vector<SentenceAnnotation> sentences;

  bool operator==(const AnnotatedTweet&) const = default;
};

// Splits after '.', '!' or '?' when followed by whitespace or end of text.
// Sentences keep their terminator and are trimmed; empty ones are dropped.
std::vector<std::string> split_sentences(std::string_view text);

// clamp(2 + sum of lexicon deltas over tokens, 0, 4).
int score_sentence(std::string_view sentence, const Lexicon& lex);

// Leftmost, longest, non-overlapping gazetteer matches, filtered by policy.
// Surfaces keep the sentence's original casing.
std::vector<EntityMention> extract_entities(std::string_view sentence,
                                            const Gazetteer& gaz,
                                            const EntityTypePolicy& policy);

// Throws ContractViolation for a deleted tweet.
AnnotatedTweet annotate_tweet(const TweetRecord& t, const Lexicon& lex,
                              const Gazetteer& gaz,
                              const EntityTypePolicy& policy);

// The deterministic lexicon + gazetteer annotator with its resources.
class ReferenceAnnotator {
 public:
  ReferenceAnnotator(Lexicon lex, Gazetteer gaz, EntityTypePolicy policy)
      : lex_(std::move(lex)), gaz_(std::move(gaz)), policy_(std::move(policy)) {}

  AnnotatedTweet annotate(const TweetRecord& t) const {
    return annotate_tweet(t, lex_, gaz_, policy_);
  }
  const EntityTypePolicy& policy() const { return policy_; }

 private:
  Lexicon lex_;
  Gazetteer gaz_;
  EntityTypePolicy policy_;
};

// Pre-annotated JSON-lines: {tweet_id, user_id,
//   sentences:[{text, sentiment, entities:[{surface, type}]}]}.
std::string to_preannotated_json(const AnnotatedTweet& a);

// Validates one line and applies the policy to its entities.
// Throws LineError.
AnnotatedTweet parse_preannotated_line(std::string_view line,
                                       const EntityTypePolicy& policy,
                                       const std::string& source,
                                       std::size_t line_no);

class PreannotatedReader {
 public:
  PreannotatedReader(const std::filesystem::path& path,
                     EntityTypePolicy policy);
  PreannotatedReader(std::istream& in, std::string source,
                     EntityTypePolicy policy);

  // Blank lines are skipped; any invalid line throws.
  std::optional<AnnotatedTweet> next();

 private:
  std::ifstream file_;
  std::istream* in_;
  std::string source_;
  EntityTypePolicy policy_;
  std::size_t line_ = 0;
};

std::vector<AnnotatedTweet> ingest_preannotated(
    const std::filesystem::path& path, const EntityTypePolicy& policy);

}  // namespace partisan

#endif  // PARTISAN_ANNOTATOR_HPP_
