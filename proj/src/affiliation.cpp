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

#include "partisan/affiliation.hpp"

#include <charconv>
#include <fstream>

#include "partisan/csv.hpp"
#include "partisan/error.hpp"

namespace partisan {

std::string_view to_string(PartyLabel l) {
  switch (l) {
    case PartyLabel::kDemocrat:
      return "Democrat";
    case PartyLabel::kRepublican:
      return "Republican";
    case PartyLabel::kUnaligned:
      return "Unaligned";
  }
  return "Unaligned";
}

std::optional<PartyLabel> parse_party_label(std::string_view s) {
  if (s == "Democrat") return PartyLabel::kDemocrat;
  if (s == "Republican") return PartyLabel::kRepublican;
  if (s == "Unaligned") return PartyLabel::kUnaligned;
  return std::nullopt;
}

std::optional<Party> to_party(PartyLabel l) {
  switch (l) {
    case PartyLabel::kDemocrat:
      return Party::kDemocrat;
    case PartyLabel::kRepublican:
      return Party::kRepublican;
    case PartyLabel::kUnaligned:
      return std::nullopt;
  }
  return std::nullopt;
}

AffiliationCounts count_affiliation(std::string_view user_id,
                                    const FigureheadRoster& roster) {
  AffiliationCounts c{std::string(user_id), 0, 0};
  for (const auto& [handle, party] : roster.figureheads) {
    auto it = roster.followers.find(handle);
    if (it == roster.followers.end() || !it->second.contains(c.user_id)) {
      continue;
    }
    (party == Party::kDemocrat ? c.f_d : c.f_r) += 1;
  }
  return c;
}

PartyLabel assign_party(const AffiliationCounts& c) {
  if (c.f_d > c.f_r) return PartyLabel::kDemocrat;
  if (c.f_r > c.f_d) return PartyLabel::kRepublican;
  return PartyLabel::kUnaligned;
}

AffiliationIndex::AffiliationIndex(const FigureheadRoster& roster) {
  for (const auto& [handle, followers] : roster.followers) {
    auto party = roster.figureheads.find(handle);
    if (party == roster.figureheads.end()) continue;
    for (const auto& user : followers) {
      auto& slot = index_[user];
      (party->second == Party::kDemocrat ? slot.first : slot.second) += 1;
    }
  }
}

AffiliationCounts AffiliationIndex::counts(std::string_view user_id) const {
  AffiliationCounts c{std::string(user_id), 0, 0};
  if (auto it = index_.find(c.user_id); it != index_.end()) {
    c.f_d = it->second.first;
    c.f_r = it->second.second;
  }
  return c;
}

std::size_t Partition::count(PartyLabel l) const {
  std::size_t n = 0;
  for (const auto& [user, a] : users) n += (a.label == l);
  return n;
}

PartyLabel Partition::label_of(const std::string& user_id) const {
  auto it = users.find(user_id);
  return it == users.end() ? PartyLabel::kUnaligned : it->second.label;
}

Partition partition_corpus(std::span<const TweetRecord> tweets,
                           const FigureheadRoster& roster) {
  AffiliationIndex index(roster);
  Partition p;
  for (const auto& t : tweets) {
    auto [it, inserted] = p.users.try_emplace(t.user_id);
    if (!inserted) continue;
    it->second.counts = index.counts(t.user_id);
    it->second.label = assign_party(it->second.counts);
  }
  return p;
}

Partition merge_partitions(Partition a, const Partition& b) {
  for (const auto& [user, aff] : b.users) {
    auto [it, inserted] = a.users.try_emplace(user, aff);
    if (!inserted && !(it->second == aff)) {
      throw ContractViolation("conflicting affiliation for user " + user);
    }
  }
  return a;
}

void write_affiliations_csv(std::ostream& out, const Partition& p) {
  out << "user_id,f_d,f_r,label\n";
  for (const auto& [user, a] : p.users) {
    csv::write_row(out, {user, std::to_string(a.counts.f_d),
                         std::to_string(a.counts.f_r), to_string(a.label)});
  }
}

namespace {

std::size_t parse_count(const std::string& s, const csv::Reader& r) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw LineError(r.path(), r.line(), "invalid count '" + s + "'");
  }
  return v;
}

}  // namespace

Partition read_affiliations_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open affiliations file " + path.string());
  csv::Reader reader(in, path.string());
  static constexpr std::string_view kHeader[] = {"user_id", "f_d", "f_r",
                                                 "label"};
  reader.expect_header(kHeader);
  Partition p;
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() != 4) {
      throw LineError(reader.path(), reader.line(), "expected 4 columns");
    }
    Affiliation a;
    a.counts = {row[0], parse_count(row[1], reader), parse_count(row[2], reader)};
    auto label = parse_party_label(row[3]);
    if (!label || *label != assign_party(a.counts)) {
      throw LineError(reader.path(), reader.line(),
                      "label does not match counts");
    }
    a.label = *label;
    if (!p.users.emplace(row[0], std::move(a)).second) {
      throw LineError(reader.path(), reader.line(), "duplicate user_id");
    }
  }
  return p;
}

}  // namespace partisan
