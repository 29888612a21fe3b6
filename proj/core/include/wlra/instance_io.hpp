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

// On-disk form of a reduction instance: a directory holding M.txt, W.txt and
// meta.json. For missing-data instances M.txt carries `?` wherever W is 0.

#ifndef WLRA_INSTANCE_IO_HPP_
#define WLRA_INSTANCE_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>

#include "wlra/reductions.hpp"

namespace wlra {

// Writes the instance files, creating `dir` if needed. When the maximum
// biclique size is known it is recorded together with the predicted optimum.
void save_instance(const std::filesystem::path& dir, const ReductionInstance& inst,
                   std::optional<std::size_t> max_biclique_edges = std::nullopt);

// Rebuilds the instance from its metadata and checks it against the stored
// matrices; a mismatch raises an inconsistency error.
ReductionInstance load_instance(const std::filesystem::path& dir);

// Masked view of the data: entries with zero weight become unknown.
MaskedMatrix masked_view(const ReductionInstance& inst);

}  // namespace wlra

#endif  // WLRA_INSTANCE_IO_HPP_
