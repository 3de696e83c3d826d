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

#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace hqc {

using Rng = std::mt19937_64;

// Distinguished value for an undefined (bottom) classical answer.
inline constexpr std::uint64_t kBottom = ~std::uint64_t{0};

enum class ErrorKind {
  LayerInvalid,
  Range,
  Width,
  ImpossibleOutcome,
  DimensionMismatch,
  MissingFlag,
  RegisterOverlap,
  Precondition,
  Validation,
  Unsupported,
  Solver,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

inline int parity(std::uint64_t x) { return std::popcount(x) & 1; }

inline int dot2(std::uint64_t a, std::uint64_t b) { return parity(a & b); }

// pair(a, b) with a in the high half: a << n | b.
inline std::uint64_t pack_pair(std::uint64_t a, std::uint64_t b, int n) {
  return (a << n) | b;
}
inline std::uint64_t pair_high(std::uint64_t v, int n) { return v >> n; }
inline std::uint64_t pair_low(std::uint64_t v, int n) { return v & low_mask(n); }

// Per-trial stream: (master seed, trial index) feed a seed_seq.
Rng split_rng(std::uint64_t master, std::uint64_t stream);

// One 64-bit draw used to seed a child stream.
inline std::uint64_t child_seed(Rng& rng) { return rng(); }

}  // namespace hqc
