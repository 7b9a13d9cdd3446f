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

#ifndef PARTISAN_CORPUS_HPP_
#define PARTISAN_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "partisan/timeutil.hpp"

namespace partisan {

struct TweetRecord {
  std::string tweet_id;
  std::string user_id;
  std::string text;
  Timestamp created_at{};
  bool deleted = false;

  bool operator==(const TweetRecord&) const = default;
};

enum class Party { kDemocrat, kRepublican };

std::string_view to_string(Party p);
inline Party opposite(Party p) {
  return p == Party::kDemocrat ? Party::kRepublican : Party::kDemocrat;
}

// Figurehead handle -> party, plus each handle's follower set.
struct FigureheadRoster {
  std::map<std::string, Party> figureheads;
  std::map<std::string, std::set<std::string>> followers;

  std::size_t count(Party p) const;
};

// Same roster with every handle's party flipped.
FigureheadRoster swap_parties(const FigureheadRoster& roster);

// Half-open [start, end).
struct Interval {
  Timestamp start{};
  Timestamp end{};

  bool contains(Timestamp t) const { return start <= t && t < end; }
  std::chrono::seconds duration() const { return end - start; }
  bool operator==(const Interval&) const = default;
};

struct EventWindows {
  std::string event_name;
  Interval baseline;
  Interval crisis;

  // Throws DataError unless both windows are nonempty, ordered,
  // non-overlapping and of equal length.
  void validate() const;
  bool operator==(const EventWindows&) const = default;
};

enum class WindowLabel { kBaseline, kCrisis, kOutside };

std::string_view to_string(WindowLabel w);

WindowLabel classify_window(Timestamp t, const EventWindows& w);

struct RejectedLine {
  std::size_t line = 0;
  std::string reason;
};

// Streams TweetRecords from a JSON-lines source in file order. Malformed
// lines, blank lines and duplicate tweet_ids are recorded as rejections and
// skipped.
class TweetReader {
 public:
  explicit TweetReader(const std::filesystem::path& path);
  TweetReader(std::istream& in, std::string source_name);

  std::optional<TweetRecord> next();

  const std::vector<RejectedLine>& rejected() const { return rejected_; }
  std::size_t lines_read() const { return line_; }
  const std::string& source_name() const { return source_; }

 private:
  std::ifstream file_;
  std::istream* in_;
  std::string source_;
  std::size_t line_ = 0;
  std::unordered_set<std::string> seen_ids_;
  std::vector<RejectedLine> rejected_;
};

struct TweetParseResult {
  std::vector<TweetRecord> records;
  std::vector<RejectedLine> rejected;
  std::size_t lines = 0;
  std::string source;

  // Throws DataError describing the rejections, if any.
  void require_clean() const;
};

TweetParseResult parse_tweets(const std::filesystem::path& path);
TweetParseResult parse_tweets(std::istream& in, std::string source_name);

// One JSON-lines record, no trailing newline. Inverse of the reader.
std::string to_json_line(const TweetRecord& t);

// Roster CSV (`handle,party`, party D or R) plus `<handle>.txt` follower
// files, one user_id per line, `#` comments and blank lines ignored.
FigureheadRoster load_affiliation_data(
    const std::filesystem::path& roster_path,
    const std::filesystem::path& followers_dir);

// JSON {event_name, baseline:{start,end}, crisis:{start,end}}.
EventWindows load_windows(const std::filesystem::path& path);
EventWindows parse_windows(std::string_view json_text, std::string_view source);
std::string windows_to_json(const EventWindows& w);

}  // namespace partisan

#endif  // PARTISAN_CORPUS_HPP_
