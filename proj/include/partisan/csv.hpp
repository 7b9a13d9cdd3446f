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

#ifndef PARTISAN_CSV_HPP_
#define PARTISAN_CSV_HPP_

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace partisan::csv {

// RFC 4180 field quoting: fields containing a comma, quote, CR or LF are
// wrapped in double quotes with inner quotes doubled.
std::string escape(std::string_view field);

void write_row(std::ostream& out, std::span<const std::string> fields);
void write_row(std::ostream& out, std::initializer_list<std::string_view> fields);

// Streaming RFC 4180 reader. Records end with LF or CRLF; quoted fields may
// span lines. Throws LineError on an unterminated quote or stray characters
// after a closing quote.
class Reader {
 public:
  Reader(std::istream& in, std::string path);

  // Reads the next record; false at end of input.
  bool next(std::vector<std::string>& fields);

  // 1-based line on which the last returned record started.
  std::size_t line() const { return record_line_; }
  const std::string& path() const { return path_; }

  // Reads the header record and checks it equals `expected`.
  void expect_header(std::span<const std::string_view> expected);

 private:
  std::istream& in_;
  std::string path_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

}  // namespace partisan::csv

#endif  // PARTISAN_CSV_HPP_
