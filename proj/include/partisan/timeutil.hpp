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

#ifndef PARTISAN_TIMEUTIL_HPP_
#define PARTISAN_TIMEUTIL_HPP_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace partisan {

using Timestamp = std::chrono::sys_seconds;

// RFC 3339 date-time, e.g. "2020-02-01T00:00:00Z" or
// "2020-02-01T01:30:00.25+01:30". Fractional seconds are truncated.
std::optional<Timestamp> parse_rfc3339(std::string_view s);

// Accepts RFC 3339 or a bare "YYYY-MM-DD", read as 00:00:00 UTC that day.
std::optional<Timestamp> parse_date_or_rfc3339(std::string_view s);

// Always "YYYY-MM-DDTHH:MM:SSZ".
std::string format_rfc3339(Timestamp t);

}  // namespace partisan

#endif  // PARTISAN_TIMEUTIL_HPP_
