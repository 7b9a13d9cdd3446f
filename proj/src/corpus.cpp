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

#include "partisan/corpus.hpp"

#include <fmt/format.h>

#include <json.hpp>

#include "partisan/csv.hpp"
#include "partisan/error.hpp"
#include "partisan/text.hpp"

namespace partisan {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string_view to_string(Party p) {
  return p == Party::kDemocrat ? "Democrat" : "Republican";
}

std::string_view to_string(WindowLabel w) {
  switch (w) {
    case WindowLabel::kBaseline:
      return "baseline";
    case WindowLabel::kCrisis:
      return "crisis";
    case WindowLabel::kOutside:
      return "outside";
  }
  return "outside";
}

std::size_t FigureheadRoster::count(Party p) const {
  std::size_t n = 0;
  for (const auto& [handle, party] : figureheads) n += (party == p);
  return n;
}

FigureheadRoster swap_parties(const FigureheadRoster& roster) {
  FigureheadRoster out = roster;
  for (auto& [handle, party] : out.figureheads) party = opposite(party);
  return out;
}

void EventWindows::validate() const {
  if (!(baseline.start < baseline.end)) {
    throw DataError("windows: baseline start must precede its end");
  }
  if (!(crisis.start < crisis.end)) {
    throw DataError("windows: crisis start must precede its end");
  }
  if (baseline.end > crisis.start) {
    throw DataError("windows: baseline must end at or before crisis start");
  }
  if (baseline.duration() != crisis.duration()) {
    throw DataError(fmt::format(
        "windows: baseline and crisis lengths differ ({}s vs {}s)",
        baseline.duration().count(), crisis.duration().count()));
  }
}

WindowLabel classify_window(Timestamp t, const EventWindows& w) {
  if (w.baseline.contains(t)) return WindowLabel::kBaseline;
  if (w.crisis.contains(t)) return WindowLabel::kCrisis;
  return WindowLabel::kOutside;
}

// --- tweets ---------------------------------------------------------------

namespace {

// Parses one line; returns an error message on failure.
std::optional<std::string> parse_tweet_line(const std::string& line,
                                            TweetRecord& out) {
  if (text::trim(line).empty()) return "blank line";
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return "malformed JSON";
  if (!j.is_object()) return "expected a JSON object";

  auto get_string = [&](const char* key,
                        std::string& dst) -> std::optional<std::string> {
    auto it = j.find(key);
    if (it == j.end()) return fmt::format("missing field '{}'", key);
    if (!it->is_string()) return fmt::format("field '{}' must be a string", key);
    dst = it->get<std::string>();
    return std::nullopt;
  };

  if (auto err = get_string("tweet_id", out.tweet_id)) return err;
  if (out.tweet_id.empty()) return "empty tweet_id";
  if (auto err = get_string("user_id", out.user_id)) return err;
  if (out.user_id.empty()) return "empty user_id";
  if (auto err = get_string("text", out.text)) return err;
  std::string created;
  if (auto err = get_string("created_at", created)) return err;
  auto ts = parse_rfc3339(created);
  if (!ts) return fmt::format("created_at '{}' is not RFC 3339", created);
  out.created_at = *ts;
  out.deleted = false;
  if (auto it = j.find("deleted"); it != j.end()) {
    if (!it->is_boolean()) return "field 'deleted' must be a boolean";
    out.deleted = it->get<bool>();
  }
  return std::nullopt;
}

}  // namespace

TweetReader::TweetReader(const fs::path& path)
    : file_(path), in_(&file_), source_(path.string()) {
  if (!file_) throw DataError("cannot open tweets file " + path.string());
}

TweetReader::TweetReader(std::istream& in, std::string source_name)
    : in_(&in), source_(std::move(source_name)) {}

std::optional<TweetRecord> TweetReader::next() {
  std::string line;
  while (std::getline(*in_, line)) {
    ++line_;
    TweetRecord rec;
    if (auto err = parse_tweet_line(line, rec)) {
      rejected_.push_back({line_, std::move(*err)});
      continue;
    }
    if (!seen_ids_.insert(rec.tweet_id).second) {
      rejected_.push_back({line_, "duplicate tweet_id '" + rec.tweet_id + "'"});
      continue;
    }
    return rec;
  }
  if (in_->bad()) throw DataError("read failure on " + source_);
  return std::nullopt;
}

void TweetParseResult::require_clean() const {
  if (rejected.empty()) return;
  const auto& first = rejected.front();
  throw LineError(source, first.line,
                  fmt::format("{} ({} rejected line(s) in total)", first.reason,
                              rejected.size()));
}

namespace {

TweetParseResult drain(TweetReader& reader) {
  TweetParseResult result;
  while (auto rec = reader.next()) result.records.push_back(std::move(*rec));
  result.rejected = reader.rejected();
  result.lines = reader.lines_read();
  result.source = reader.source_name();
  return result;
}

}  // namespace

TweetParseResult parse_tweets(const fs::path& path) {
  TweetReader reader(path);
  return drain(reader);
}

TweetParseResult parse_tweets(std::istream& in, std::string source_name) {
  TweetReader reader(in, std::move(source_name));
  return drain(reader);
}

std::string to_json_line(const TweetRecord& t) {
  json j = {{"tweet_id", t.tweet_id},
            {"user_id", t.user_id},
            {"text", t.text},
            {"created_at", format_rfc3339(t.created_at)}};
  if (t.deleted) j["deleted"] = true;
  return j.dump();
}

// --- roster ---------------------------------------------------------------

FigureheadRoster load_affiliation_data(const fs::path& roster_path,
                                       const fs::path& followers_dir) {
  std::ifstream in(roster_path);
  if (!in) throw DataError("cannot open roster " + roster_path.string());
  csv::Reader reader(in, roster_path.string());
  static constexpr std::string_view kHeader[] = {"handle", "party"};
  reader.expect_header(kHeader);

  FigureheadRoster roster;
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() == 1 && text::trim(row[0]).empty()) continue;
    if (row.size() != 2) {
      throw LineError(reader.path(), reader.line(), "expected 2 columns");
    }
    std::string handle(text::trim(row[0]));
    std::string party_tok(text::trim(row[1]));
    if (handle.empty()) {
      throw LineError(reader.path(), reader.line(), "empty handle");
    }
    Party party;
    if (party_tok == "D") {
      party = Party::kDemocrat;
    } else if (party_tok == "R") {
      party = Party::kRepublican;
    } else {
      throw LineError(reader.path(), reader.line(),
                      "unknown party '" + party_tok + "'");
    }
    if (!roster.figureheads.emplace(handle, party).second) {
      throw LineError(reader.path(), reader.line(),
                      "handle '" + handle + "' listed more than once");
    }
  }

  if (!fs::is_directory(followers_dir)) {
    throw DataError("followers directory not found: " + followers_dir.string());
  }
  for (const auto& entry : fs::directory_iterator(followers_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") {
      continue;
    }
    auto handle = entry.path().stem().string();
    if (!roster.figureheads.contains(handle)) {
      throw DataError("follower file for unknown handle '" + handle + "': " +
                      entry.path().string());
    }
  }

  for (const auto& [handle, party] : roster.figureheads) {
    auto path = followers_dir / (handle + ".txt");
    std::ifstream f(path);
    if (!f) {
      throw DataError("no follower file for handle '" + handle + "' (" +
                      path.string() + ")");
    }
    auto& set = roster.followers[handle];
    std::string line;
    while (std::getline(f, line)) {
      auto id = text::trim(line);
      if (id.empty() || id.front() == '#') continue;
      set.emplace(id);
    }
  }
  return roster;
}

// --- windows --------------------------------------------------------------

namespace {

Interval read_interval(const json& j, const char* name,
                       std::string_view source) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_object()) {
    throw DataError(fmt::format("{}: missing object '{}'", source, name));
  }
  auto read = [&](const char* key) {
    auto v = it->find(key);
    if (v == it->end() || !v->is_string()) {
      throw DataError(
          fmt::format("{}: '{}.{}' must be a date string", source, name, key));
    }
    auto ts = parse_date_or_rfc3339(v->get<std::string>());
    if (!ts) {
      throw DataError(fmt::format("{}: '{}.{}' is not a date or RFC 3339 time",
                                  source, name, key));
    }
    return *ts;
  };
  return Interval{read("start"), read("end")};
}

}  // namespace

EventWindows parse_windows(std::string_view json_text, std::string_view source) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw DataError(fmt::format("{}: not a JSON object", source));
  }
  EventWindows w;
  if (auto it = j.find("event_name"); it != j.end() && it->is_string()) {
    w.event_name = it->get<std::string>();
  } else {
    throw DataError(fmt::format("{}: missing string 'event_name'", source));
  }
  w.baseline = read_interval(j, "baseline", source);
  w.crisis = read_interval(j, "crisis", source);
  w.validate();
  return w;
}

EventWindows load_windows(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open windows file " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return parse_windows(content, path.string());
}

std::string windows_to_json(const EventWindows& w) {
  json j = {{"event_name", w.event_name},
            {"baseline",
             {{"start", format_rfc3339(w.baseline.start)},
              {"end", format_rfc3339(w.baseline.end)}}},
            {"crisis",
             {{"start", format_rfc3339(w.crisis.start)},
              {"end", format_rfc3339(w.crisis.end)}}}};
  return j.dump(2) + "\n";
}

}  // namespace partisan
