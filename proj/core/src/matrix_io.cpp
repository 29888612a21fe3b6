// Copyright 2026 The wlra Authors
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

#include "wlra/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "wlra/error.hpp"

namespace wlra {
namespace {

[[noreturn]] void parse_fail(const std::string& source, std::size_t line,
                             const std::string& what) {
  fail(ErrorKind::kParse, source + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
      ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r')
      ++end;
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Reads the next non-blank line; returns false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!split(line).empty()) return true;
  }
  return false;
}

MaskedMatrix read_impl(std::istream& in, const std::string& source, bool allow_unknown) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) parse_fail(source, line_no + 1, "missing `rows cols` header");
  const auto header = split(line);
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (header.size() != 2 || !parse_number(header[0], rows) || !parse_number(header[1], cols) ||
      rows == 0 || cols == 0) {
    parse_fail(source, line_no, "expected header `rows cols` with positive integers");
  }
  std::vector<double> data;
  std::vector<bool> known;
  data.reserve(rows * cols);
  known.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!next_line(in, line, line_no)) {
      parse_fail(source, line_no + 1, "expected " + std::to_string(rows) + " rows, found " +
                                          std::to_string(i));
    }
    const auto tokens = split(line);
    if (tokens.size() != cols) {
      parse_fail(source, line_no, "expected " + std::to_string(cols) + " values, found " +
                                      std::to_string(tokens.size()));
    }
    for (std::string_view tok : tokens) {
      if (tok == "?") {
        if (!allow_unknown) parse_fail(source, line_no, "unknown entry `?` not allowed here");
        data.push_back(0.0);
        known.push_back(false);
        continue;
      }
      double x = 0.0;
      if (!parse_number(tok, x) || !std::isfinite(x)) {
        parse_fail(source, line_no, "invalid number `" + std::string(tok) + "`");
      }
      data.push_back(x);
      known.push_back(true);
    }
  }
  if (next_line(in, line, line_no)) parse_fail(source, line_no, "unexpected trailing data");
  return MaskedMatrix(Matrix(rows, cols, std::move(data)), std::move(known));
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_double(double x, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, x);
  return buf;
}

MaskedMatrix read_masked_matrix(std::istream& in, const std::string& source) {
  return read_impl(in, source, true);
}

Matrix read_matrix(std::istream& in, const std::string& source) {
  return read_impl(in, source, false).values();
}

WeightMatrix read_weight_matrix(std::istream& in, const std::string& source) {
  Matrix values = read_matrix(in, source);
  for (std::size_t i = 0; i < values.rows(); ++i)
    for (std::size_t j = 0; j < values.cols(); ++j)
      if (values(i, j) < 0.0)
        fail(ErrorKind::kParse, source + ": negative weight at (" + std::to_string(i + 1) +
                                    "," + std::to_string(j + 1) + ")");
  return WeightMatrix(std::move(values));
}

MaskedMatrix load_masked_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_masked_matrix(in, path.string());
}

Matrix load_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_matrix(in, path.string());
}

WeightMatrix load_weight_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_weight_matrix(in, path.string());
}

void write_masked_matrix(std::ostream& out, const MaskedMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << (m.known(i, j) ? format_double(m.values()(i, j)) : std::string("?"));
    }
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const Matrix& m) { write_masked_matrix(out, MaskedMatrix(m)); }

void save_matrix(const std::filesystem::path& path, const Matrix& m) {
  auto out = open_output(path);
  write_matrix(out, m);
}

void save_masked_matrix(const std::filesystem::path& path, const MaskedMatrix& m) {
  auto out = open_output(path);
  write_masked_matrix(out, m);
}

}  // namespace wlra
