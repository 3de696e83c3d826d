// Copyright 2026 The hqc Authors
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

#include <bit>

#include "hqc/solvers.hpp"

namespace hqc {

const char* to_string(Gf2Status s) {
  switch (s) {
    case Gf2Status::Unique: return "unique";
    case Gf2Status::RankDeficient: return "rank-deficient";
    case Gf2Status::Inconsistent: return "inconsistent";
  }
  return "?";
}

namespace {

// Reduced row echelon form; returns pivot columns in row order.
std::vector<int> rref(std::vector<std::uint64_t>& rows, int n) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int col = n - 1; col >= 0 && r < rows.size(); --col) {
    const std::uint64_t bit = std::uint64_t{1} << col;
    std::size_t p = r;
    while (p < rows.size() && !(rows[p] & bit)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && (rows[i] & bit)) rows[i] ^= rows[r];
    pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

int gf2_rank(std::vector<std::uint64_t> rows) {
  int n = 0;
  for (auto r : rows) n = std::max(n, 64 - std::countl_zero(r));
  return static_cast<int>(rref(rows, n).size());
}

Gf2Solution gf2_nullspace(const LinearSystemGF2& sys) {
  if (sys.n < 1 || sys.n > 63) throw Error(ErrorKind::Range, "GF(2) system width outside [1, 63]");
  const std::uint64_t mask = low_mask(sys.n);
  std::vector<std::uint64_t> rows;
  rows.reserve(sys.rows.size());
  for (auto r : sys.rows) {
    if (r & ~mask) throw Error(ErrorKind::Width, "row wider than the system");
    rows.push_back(r);
  }
  const auto pivots = rref(rows, sys.n);
  Gf2Solution out;
  out.rank = static_cast<int>(pivots.size());
  if (out.rank == sys.n) {
    out.status = Gf2Status::Inconsistent;
    return out;
  }
  if (out.rank < sys.n - 1) {
    out.status = Gf2Status::RankDeficient;
    return out;
  }
  std::uint64_t pivot_mask = 0;
  for (int c : pivots) pivot_mask |= std::uint64_t{1} << c;
  const int free_col = std::countr_zero(~pivot_mask & mask);
  std::uint64_t s = std::uint64_t{1} << free_col;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i] >> free_col & 1u) s |= std::uint64_t{1} << pivots[i];
  out.status = Gf2Status::Unique;
  out.s = s;
  return out;
}

}  // namespace hqc
