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

#include "srchol/rng.hpp"

#include "srchol/linalg.hpp"

namespace srchol {

DenseMatrix gaussian_matrix(Index rows, Index cols, RngStream& rng) {
  if (rows <= 0 || cols <= 0) {
    throw DimensionError("gaussian_matrix requires positive dimensions");
  }
  DenseMatrix m(rows, cols);
  // Fill in storage order so the sequence-to-entry map is fixed.
  double* p = m.data();
  for (Index i = 0; i < m.size(); ++i) p[i] = rng.normal();
  return m;
}

}  // namespace srchol
