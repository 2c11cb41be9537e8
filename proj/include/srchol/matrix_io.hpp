// Copyright 2026 The srchol Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>

#include "srchol/dense_matrix.hpp"

namespace srchol {

/// Binary layout: "SRCHMAT1", rows and cols as little-endian uint64, then
/// rows * cols little-endian float64 in column-major order.
void write_matrix_binary(const std::filesystem::path& path, const DenseMatrix& m);
DenseMatrix read_matrix_binary(const std::filesystem::path& path);

/// One row per line, 17 significant digits, no header.
void write_matrix_csv(const std::filesystem::path& path, const DenseMatrix& m);
DenseMatrix read_matrix_csv(const std::filesystem::path& path);

/// One index per line.
void write_permutation_csv(const std::filesystem::path& path, const Permutation& perm);
Permutation read_permutation_csv(const std::filesystem::path& path);

}  // namespace srchol
