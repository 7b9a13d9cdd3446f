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

#ifndef PARTISAN_AFFILIATION_HPP_
#define PARTISAN_AFFILIATION_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "partisan/corpus.hpp"

namespace partisan {

enum class PartyLabel { kDemocrat, kRepublican, kUnaligned };

std::string_view to_string(PartyLabel l);
std::optional<PartyLabel> parse_party_label(std::string_view s);
std::optional<Party> to_party(PartyLabel l);

struct AffiliationCounts {
  std::string user_id;
  std::size_t f_d = 0;  // Democrat figureheads followed
  std::size_t f_r = 0;  // Republican figureheads followed

  bool operator==(const AffiliationCounts&) const = default;
};

// Direct scan of every roster follower set.
AffiliationCounts count_affiliation(std::string_view user_id,
                                    const FigureheadRoster& roster);

// Strict majority; ties (including 0-0) are Unaligned.
PartyLabel assign_party(const AffiliationCounts& c);

// user_id -> (f_d, f_r), inverted once from the roster so lookups are O(1).
class AffiliationIndex {
 public:
  explicit AffiliationIndex(const FigureheadRoster& roster);
  AffiliationCounts counts(std::string_view user_id) const;

 private:
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> index_;
};

struct Affiliation {
  AffiliationCounts counts;
  PartyLabel label = PartyLabel::kUnaligned;

  bool operator==(const Affiliation&) const = default;
};

// Per-user party labels for every distinct author in a corpus.
struct Partition {
  std::map<std::string, Affiliation> users;

  std::size_t count(PartyLabel l) const;
  // Unknown users are Unaligned.
  PartyLabel label_of(const std::string& user_id) const;

  bool operator==(const Partition&) const = default;
};

Partition partition_corpus(std::span<const TweetRecord> tweets,
                           const FigureheadRoster& roster);

// Union of partitions built over disjoint tweet shards. A user present in
// both must carry identical counts.
Partition merge_partitions(Partition a, const Partition& b);

// Audit CSV `user_id,f_d,f_r,label`.
void write_affiliations_csv(std::ostream& out, const Partition& p);
Partition read_affiliations_csv(const std::filesystem::path& path);

}  // namespace partisan

#endif  // PARTISAN_AFFILIATION_HPP_
