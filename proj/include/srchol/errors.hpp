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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace srchol {

using Index = std::ptrdiff_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class SymmetryError : public Error {
 public:
  using Error::Error;
};

// Raised by Cholesky kernels when a pivot falls at or below the threshold.
// index() is the failing column relative to the matrix that was passed in;
// drivers rethrow with the global column.
class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(Index index, double pivot)
      : Error("matrix is not positive definite: pivot " + std::to_string(pivot) +
              " at column " + std::to_string(index)),
        index_(index),
        pivot_(pivot) {}

  Index index() const noexcept { return index_; }
  double pivot() const noexcept { return pivot_; }

 private:
  Index index_;
  double pivot_;
};

class SingularTriangular : public Error {
 public:
  explicit SingularTriangular(Index index)
      : Error("triangular factor is singular at diagonal " + std::to_string(index)),
        index_(index) {}

  Index index() const noexcept { return index_; }

 private:
  Index index_;
};

// The Schur complement is numerically zero: the matrix has rank <= rank().
class RankDeficient : public Error {
 public:
  RankDeficient(Index rank, double alpha)
      : Error("matrix is numerically rank deficient at rank " + std::to_string(rank)),
        rank_(rank),
        alpha_(alpha) {}

  Index rank() const noexcept { return rank_; }
  double alpha() const noexcept { return alpha_; }

 private:
  Index rank_;
  double alpha_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace srchol
