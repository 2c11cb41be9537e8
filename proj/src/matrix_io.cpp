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

#include "srchol/matrix_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "srchol/kernels.hpp"

namespace srchol {

namespace {

constexpr std::array<char, 8> kMagic{'S', 'R', 'C', 'H', 'M', 'A', 'T', '1'};

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return v;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

template <typename T>
void put(std::ofstream& out, T v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in, const std::filesystem::path& path) {
  T v;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw Error(path.string() + ": truncated matrix file");
  }
  return to_little(v);
}

}  // namespace

void write_matrix_binary(const std::filesystem::path& path, const DenseMatrix& m) {
  auto out = open_out(path, std::ios::binary | std::ios::trunc);
  out.write(kMagic.data(), kMagic.size());
  put(out, static_cast<std::uint64_t>(m.rows()));
  put(out, static_cast<std::uint64_t>(m.cols()));
  for (double v : m.values()) put(out, v);
  if (!out) throw Error("write failed: " + path.string());
}

DenseMatrix read_matrix_binary(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw Error(path.string() + ": not a SRCHMAT1 file");
  }
  const auto rows = get<std::uint64_t>(in, path);
  const auto cols = get<std::uint64_t>(in, path);
  constexpr auto kMax = static_cast<std::uint64_t>(std::numeric_limits<Index>::max());
  if (rows > kMax || cols > kMax || (cols != 0 && rows > kMax / cols)) {
    throw Error(path.string() + ": matrix dimensions overflow");
  }
  std::vector<double> data(static_cast<std::size_t>(rows * cols));
  for (double& v : data) v = get<double>(in, path);
  return DenseMatrix::from_column_major(static_cast<Index>(rows), static_cast<Index>(cols),
                                        std::move(data));
}

void write_matrix_csv(const std::filesystem::path& path, const DenseMatrix& m) {
  auto out = open_out(path, std::ios::trunc);
  out.precision(std::numeric_limits<double>::max_digits10);
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ',';
      out << m(r, c);
    }
    out << '\n';
  }
  if (!out) throw Error("write failed: " + path.string());
}

DenseMatrix read_matrix_csv(const std::filesystem::path& path) {
  return load_csv(path, false).features;
}

void write_permutation_csv(const std::filesystem::path& path, const Permutation& perm) {
  auto out = open_out(path, std::ios::trunc);
  for (Index i = 0; i < perm.size(); ++i) out << perm[i] << '\n';
  if (!out) throw Error("write failed: " + path.string());
}

Permutation read_permutation_csv(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::in);
  std::vector<Index> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Index v = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc{} || ptr != line.data() + line.size()) {
      throw ParseError("bad permutation entry '" + line + "'", line_no);
    }
    entries.push_back(v);
  }
  return Permutation(std::move(entries));
}

}  // namespace srchol
