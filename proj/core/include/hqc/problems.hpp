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

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "hqc/common.hpp"
#include "hqc/oracle.hpp"

namespace hqc {

inline constexpr int kMaxShufflerN = 12;
inline constexpr int kMaxScsN = 10;

struct SimonInstance {
  int n = 0;
  FunctionTable table;
  std::uint64_t s = 0;
};

FunctionTable sample_one_to_one(int n, Rng& rng);
SimonInstance sample_simon(int n, Rng& rng);
FunctionTable sample_two_to_one(int n, Rng& rng);

// Both pre-images of every image of a 2-to-1 table, ascending: result[y] = (x0, x1).
std::vector<std::pair<std::uint64_t, std::uint64_t>> collision_pairs(const FunctionTable& f,
                                                                    std::vector<std::uint64_t>* images);

// Sampler pair for the inner problem: O with its answer r, and the random R.
struct GenericProblem {
  std::function<std::pair<FunctionTable, std::uint64_t>(int, Rng&)> sample_o;
  std::function<FunctionTable(int, Rng&)> sample_r;
  static GenericProblem simon();
};

enum class Variant { Search, Decision };

struct SerialInstance {
  int c = 0;
  int n = 0;
  Variant variant = Variant::Search;
  std::vector<FunctionTable> f;   // f_0 .. f_c (f_c is the inner oracle Q)
  std::vector<std::uint64_t> s;   // s_0 .. s_{c-1}
  std::vector<FunctionTable> L;   // L_{f_0} .. L_{f_c} over pairs (x, z)
  std::uint64_t answer = 0;       // r
  int label = 0;                  // decision variant: 0 for O, 1 for R

  OracleBundle bundle() const;
};

// L(x, z) lives at index pack_pair(x, z, n).
FunctionTable serial_level_table(const FunctionTable& f, int n, bool gated, std::uint64_t key);

SerialInstance sample_serial(int c, int n, Rng& rng, Variant variant = Variant::Search,
                             const GenericProblem& inner = GenericProblem::simon());

// A d-Shuffler: tuples t_{-1} .. t_d and the function view f_0 .. f_d over 2n bits.
struct ShufflerInstance {
  int d = 0;
  int n = 0;
  std::vector<std::vector<std::uint64_t>> tuples;  // tuples[i + 1] = t_i
  std::vector<FunctionTable> funcs;                // f_0 .. f_d
  FunctionTable hidden;                            // f over n bits

  const std::vector<std::uint64_t>& t(int i) const { return tuples.at(i + 1); }
  std::uint64_t N() const { return std::uint64_t{1} << n; }
  std::uint64_t M() const { return std::uint64_t{1} << (2 * n); }
  // Domain of f_i, i.e. the entries of t_{i-1} (equals X_i).
  DomainSet dom(int i) const;
  // Classical walk f_d(...f_0(x)) with bottom propagation.
  std::uint64_t evaluate(std::uint64_t x) const;
  OracleBundle bundle() const;
  // Path k as (t_{-1}[k], t_0[k], ..., t_{d-1}[k]).
  std::vector<std::uint64_t> path(std::size_t k) const;
};

// Function view from the tuple view.
ShufflerInstance shuffler_from_tuples(int d, int n, std::vector<std::vector<std::uint64_t>> tuples,
                                      const FunctionTable& f);
// Tuple-form sampler; verifies the two views agree before returning.
ShufflerInstance sample_shuffler(int d, int n, const FunctionTable& f, Rng& rng);
// Function-form sampler: restrict uniformly random permutations of {0,1}^{2n}.
std::vector<FunctionTable> sample_shuffler_functions(int d, int n, const FunctionTable& f, Rng& rng);
// Tuple view recovered from a function view by walking t_{-1}.
std::vector<std::vector<std::uint64_t>> tuples_from_functions(int d, int n, const std::vector<FunctionTable>& fs);
bool shuffler_views_agree(const ShufflerInstance& xi);

struct SSInstance {
  ShufflerInstance shuffler;
  std::uint64_t s = 0;
  Variant variant = Variant::Search;
  int label = 0;  // decision: 0 Simon, 1 one-to-one partner
};
SSInstance sample_ss(int d, int n, Rng& rng, Variant variant = Variant::Search);

struct SCSInstance {
  int n = 0;
  int d = 0;
  FunctionTable f;             // 2-to-1
  SimonInstance g;
  FunctionTable p, p_inv;      // bijections of {0,1}^n
  FunctionTable h;             // one-to-one
  ShufflerInstance shuffler;   // hides h
  FunctionTable p_prime;       // (h(f(x)), x) -> p(x)
  FunctionTable p_prime_inv;   // (h(f(x)), p(x)) -> x
  StochasticOracleSpec stochastic;

  std::uint64_t s() const { return g.s; }
  int p_prime_sub() const { return d + 1; }
  int p_prime_inv_sub() const { return d + 2; }
  // Shuffler sub-oracles 0..d, then p', then p'_inv.
  OracleBundle bundle() const;
};

// Stochastic oracle of a 2-to-1 f: y uniform over images, payload b -> x_b.
StochasticOracleSpec collision_oracle(const FunctionTable& f);
// Collisions-to-Simon map: k-th largest image pair of f to k-th largest of g.
FunctionTable cs_map(const FunctionTable& f, const FunctionTable& g);
SCSInstance sample_scs(int d, int n, Rng& rng);

// Tuple of per-sub-oracle subsets; components[i-1] belongs to sub-oracle i.
struct ShadowSets {
  std::vector<DomainSet> components;
  // Full mask for a bundle with `num_subs` sub-oracles; sub-oracle 0 is never masked.
  ShadowMask to_mask(const OracleBundle& bundle) const;
};

ShadowSets shadow_sets_serial(int j, const SerialInstance& inst);
// Y: exposed paths, each (y[-1], y[0], ..., y[d-1]) or longer.
ShadowSets shadow_sets_ss(int j, const ShufflerInstance& xi,
                          const std::vector<std::vector<std::uint64_t>>& exposed);

struct ScsMasks {
  DomainSet p_prime;
  DomainSet p_prime_inv;
  std::vector<std::uint64_t> exposed_x;  // after collision-complete closure
  ShadowMask to_mask(const SCSInstance& inst) const;
};
// revealed_x: the x of every revealed triple (x, p(x), p_inv(x));
// revealed_y: images whose shuffler path is known.
ScsMasks shadow_sets_scs(const SCSInstance& inst, const std::vector<std::uint64_t>& revealed_x,
                         const std::vector<std::uint64_t>& revealed_y);

}  // namespace hqc
