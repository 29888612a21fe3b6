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

// Plain-text matrix format: a `rows cols` header followed by `rows` lines of
// whitespace-separated values. The token `?` marks an unknown entry and is
// only accepted when reading a MaskedMatrix.

#ifndef WLRA_MATRIX_IO_HPP_
#define WLRA_MATRIX_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "wlra/matrix.hpp"

namespace wlra {

MaskedMatrix read_masked_matrix(std::istream& in, const std::string& source);
Matrix read_matrix(std::istream& in, const std::string& source);
WeightMatrix read_weight_matrix(std::istream& in, const std::string& source);

MaskedMatrix load_masked_matrix(const std::filesystem::path& path);
Matrix load_matrix(const std::filesystem::path& path);
WeightMatrix load_weight_matrix(const std::filesystem::path& path);

// Values are written with 17 significant digits so they round-trip exactly.
void write_matrix(std::ostream& out, const Matrix& m);
void write_masked_matrix(std::ostream& out, const MaskedMatrix& m);

void save_matrix(const std::filesystem::path& path, const Matrix& m);
void save_masked_matrix(const std::filesystem::path& path, const MaskedMatrix& m);

std::string format_double(double x, int significant_digits = 17);

}  // namespace wlra

#endif  // WLRA_MATRIX_IO_HPP_
