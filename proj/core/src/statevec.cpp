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

#include "hqc/statevec.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace hqc {

namespace {

constexpr double kPrune = 1e-14;

using MatrixXc = Eigen::MatrixXcd;

std::string qubit_str(int q) { return std::to_string(q); }

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::LayerInvalid: return "layer-invalid";
    case ErrorKind::Range: return "range";
    case ErrorKind::Width: return "width";
    case ErrorKind::ImpossibleOutcome: return "impossible-outcome";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::MissingFlag: return "missing-flag";
    case ErrorKind::RegisterOverlap: return "register-overlap";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Solver: return "solver";
  }
  return "unknown";
}

Rng split_rng(std::uint64_t master, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

// ---------------------------------------------------------------- layout

int RegisterLayout::add(const std::string& name, int width) {
  const int offset = num_qubits_;
  place(name, offset, width);
  return offset;
}

void RegisterLayout::place(const std::string& name, int offset, int width) {
  if (width < 0 || offset < 0 || offset + width > kMaxQubits)
    throw Error(ErrorKind::Range, "register '" + name + "' exceeds qubit limit");
  if (has(name)) throw Error(ErrorKind::Precondition, "duplicate register '" + name + "'");
  regs_.push_back({name, offset, width});
  num_qubits_ = std::max(num_qubits_, offset + width);
}

bool RegisterLayout::has(const std::string& name) const {
  return std::any_of(regs_.begin(), regs_.end(), [&](const Register& r) { return r.name == name; });
}

const Register& RegisterLayout::get(const std::string& name) const {
  for (const auto& r : regs_)
    if (r.name == name) return r;
  throw Error(ErrorKind::Range, "no register named '" + name + "'");
}

std::vector<int> RegisterLayout::qubits(const std::string& name) const {
  const auto& r = get(name);
  std::vector<int> q(r.width);
  std::iota(q.begin(), q.end(), r.offset);
  return q;
}

int RegisterLayout::qubit(const std::string& name, int j) const {
  const auto& r = get(name);
  if (j < 0 || j >= r.width) throw Error(ErrorKind::Range, "qubit index outside '" + name + "'");
  return r.offset + j;
}

bool RegisterLayout::disjoint() const {
  std::uint64_t used = 0;
  for (const auto& r : regs_) {
    const std::uint64_t m = low_mask(r.width) << r.offset;
    if (used & m) return false;
    used |= m;
  }
  return true;
}

std::uint64_t RegisterLayout::read(std::uint64_t index, const std::string& name) const {
  const auto& r = get(name);
  return (index >> r.offset) & low_mask(r.width);
}

std::uint64_t gather_bits(std::uint64_t index, const std::vector<int>& qubits) {
  std::uint64_t v = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) v |= ((index >> qubits[j]) & 1u) << j;
  return v;
}

std::uint64_t scatter_bits(std::uint64_t value, const std::vector<int>& qubits) {
  std::uint64_t v = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) v |= ((value >> j) & 1u) << qubits[j];
  return v;
}

// ---------------------------------------------------------------- state

QuantumState::QuantumState(int num_qubits, std::uint64_t basis_index) : num_qubits_(num_qubits) {
  if (num_qubits < 0 || num_qubits > kMaxQubits)
    throw Error(ErrorKind::Range, "qubit count outside [0, 63]");
  if (num_qubits < 64 && (basis_index >> num_qubits) != 0)
    throw Error(ErrorKind::Range, "basis index outside the state space");
  entries_.emplace_back(basis_index, cplx{1.0, 0.0});
}

QuantumState::QuantumState(const RegisterLayout& layout, std::uint64_t basis_index)
    : QuantumState(layout.num_qubits(), basis_index) {
  layout_ = layout;
}

QuantumState QuantumState::from_amplitudes(int num_qubits, const std::vector<cplx>& amps) {
  if (num_qubits > 30 || amps.size() != (std::size_t{1} << num_qubits))
    throw Error(ErrorKind::DimensionMismatch, "amplitude vector length is not 2^num_qubits");
  std::vector<Entry> e;
  for (std::size_t i = 0; i < amps.size(); ++i)
    if (std::abs(amps[i]) > kPrune) e.emplace_back(i, amps[i]);
  return from_entries(num_qubits, std::move(e));
}

QuantumState QuantumState::from_entries(int num_qubits, std::vector<Entry> entries) {
  QuantumState s(num_qubits);
  s.assign(std::move(entries));
  if (std::abs(s.norm2() - 1.0) > kNormTolerance)
    throw Error(ErrorKind::Precondition, "state is not normalized");
  return s;
}

void QuantumState::set_layout(const RegisterLayout& layout) {
  if (layout.num_qubits() > num_qubits_)
    throw Error(ErrorKind::Range, "layout exceeds the state's qubit count");
  layout_ = layout;
}

cplx QuantumState::amplitude(std::uint64_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::uint64_t i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) return it->second;
  return {0.0, 0.0};
}

double QuantumState::norm2() const {
  double s = 0.0;
  for (const auto& e : entries_) s += std::norm(e.second);
  return s;
}

std::vector<cplx> QuantumState::dense() const {
  if (num_qubits_ > 26) throw Error(ErrorKind::Range, "dense view limited to 26 qubits");
  std::vector<cplx> v(std::size_t{1} << num_qubits_);
  for (const auto& [i, a] : entries_) v[i] = a;
  return v;
}

void QuantumState::assign(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < entries.size();) {
    std::uint64_t idx = entries[r].first;
    cplx acc = entries[r].second;
    std::size_t k = r + 1;
    while (k < entries.size() && entries[k].first == idx) acc += entries[k++].second;
    if (std::abs(acc) > kPrune) entries[w++] = {idx, acc};
    r = k;
  }
  entries.resize(w);
  entries_ = std::move(entries);
}

void QuantumState::renormalize() {
  const double n = std::sqrt(norm2());
  if (n == 0.0) throw Error(ErrorKind::ImpossibleOutcome, "zero-norm state");
  for (auto& e : entries_) e.second /= n;
}

// ---------------------------------------------------------------- gates

namespace gates {

namespace {
void check_unitary(const std::vector<cplx>& m, int dim) {
  if (static_cast<int>(m.size()) != dim * dim)
    throw Error(ErrorKind::LayerInvalid, "gate matrix has wrong size");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      cplx acc = 0;
      for (int k = 0; k < dim; ++k) acc += std::conj(m[k * dim + i]) * m[k * dim + j];
      if (std::abs(acc - cplx(i == j ? 1.0 : 0.0)) > 1e-9)
        throw Error(ErrorKind::LayerInvalid, "gate matrix is not unitary");
    }
}

std::vector<cplx> haar(int dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixXc a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<MatrixXc> qr(a);
  MatrixXc q = qr.householderQ();
  MatrixXc r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const cplx d = r(j, j);
    const cplx ph = std::abs(d) > 0 ? d / std::abs(d) : cplx(1.0);
    q.col(j) *= ph;
  }
  std::vector<cplx> m(dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m[i * dim + j] = q(i, j);
  return m;
}
}  // namespace

Gate unitary1(int q, const std::vector<cplx>& m) {
  check_unitary(m, 2);
  return Gate{{q}, m};
}

Gate unitary2(int q0, int q1, const std::vector<cplx>& m) {
  check_unitary(m, 4);
  return Gate{{q0, q1}, m};
}

Gate H(int q) {
  const double r = 1.0 / std::sqrt(2.0);
  return Gate{{q}, {r, r, r, -r}};
}

Gate X(int q) { return Gate{{q}, {0, 1, 1, 0}}; }

Gate Z(int q) { return Gate{{q}, {1, 0, 0, -1}}; }

Gate CNOT(int control, int target) {
  return Gate{{control, target}, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}};
}

Gate random1(int q, Rng& rng) { return Gate{{q}, haar(2, rng)}; }

Gate random2(int q0, int q1, Rng& rng) { return Gate{{q0, q1}, haar(4, rng)}; }

Gate then(const Gate& a, const Gate& b) {
  if (a.targets.size() != 1 || b.targets.size() != 1 || a.targets[0] != b.targets[0])
    throw Error(ErrorKind::LayerInvalid, "gate product needs two gates on the same qubit");
  std::vector<cplx> m(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m[i * 2 + j] = b.matrix[i * 2 + 0] * a.matrix[0 * 2 + j] + b.matrix[i * 2 + 1] * a.matrix[1 * 2 + j];
  return Gate{a.targets, m};
}

}  // namespace gates

GateLayer hadamard_layer(const std::vector<int>& qubits) {
  GateLayer l;
  for (int q : qubits) l.gates.push_back(gates::H(q));
  return l;
}

void check_layer(const GateLayer& layer, int num_qubits) {
  std::uint64_t used = 0;
  for (const auto& g : layer.gates) {
    const std::size_t k = g.targets.size();
    if (k != 1 && k != 2) throw Error(ErrorKind::LayerInvalid, "gates act on one or two qubits");
    if (g.matrix.size() != (k == 1 ? 4u : 16u))
      throw Error(ErrorKind::LayerInvalid, "gate matrix size does not match its arity");
    for (int t : g.targets) {
      if (t < 0 || t >= num_qubits)
        throw Error(ErrorKind::Range, "gate target " + qubit_str(t) + " out of range");
      const std::uint64_t m = std::uint64_t{1} << t;
      if (used & m)
        throw Error(ErrorKind::LayerInvalid, "gate targets overlap on qubit " + qubit_str(t));
      used |= m;
    }
  }
}

namespace {

// Returns true and fills (row, phase) per column when every column has a single nonzero.
bool monomial(const Gate& g, std::vector<int>& row, std::vector<cplx>& phase) {
  const int dim = g.targets.size() == 1 ? 2 : 4;
  row.assign(dim, -1);
  phase.assign(dim, 0);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) {
      const cplx v = g.matrix[r * dim + c];
      if (std::abs(v) > 1e-15) {
        if (row[c] >= 0) return false;
        row[c] = r;
        phase[c] = v;
      }
    }
  }
  return true;
}

void apply_gate(QuantumState& state, const Gate& g) {
  const int dim = g.targets.size() == 1 ? 2 : 4;
  std::uint64_t clear = 0;
  for (int t : g.targets) clear |= std::uint64_t{1} << t;
  auto local = [&](std::uint64_t idx) -> int {
    if (dim == 2) return static_cast<int>((idx >> g.targets[0]) & 1u);
    return static_cast<int>(((idx >> g.targets[0]) & 1u) * 2 + ((idx >> g.targets[1]) & 1u));
  };
  auto place = [&](std::uint64_t base, int r) -> std::uint64_t {
    if (dim == 2) return base | (std::uint64_t(r & 1) << g.targets[0]);
    return base | (std::uint64_t((r >> 1) & 1) << g.targets[0]) | (std::uint64_t(r & 1) << g.targets[1]);
  };
  std::vector<int> row;
  std::vector<cplx> phase;
  std::vector<QuantumState::Entry> out;
  if (monomial(g, row, phase)) {
    out.reserve(state.entries().size());
    for (const auto& [idx, a] : state.entries()) {
      const int c = local(idx);
      out.emplace_back(place(idx & ~clear, row[c]), a * phase[c]);
    }
  } else {
    out.reserve(state.entries().size() * dim);
    for (const auto& [idx, a] : state.entries()) {
      const int c = local(idx);
      const std::uint64_t base = idx & ~clear;
      for (int r = 0; r < dim; ++r) {
        const cplx v = g.matrix[r * dim + c];
        if (v != cplx(0.0)) out.emplace_back(place(base, r), v * a);
      }
    }
  }
  state.assign(std::move(out));
}

}  // namespace

void apply_layer_inplace(QuantumState& state, const GateLayer& layer) {
  check_layer(layer, state.num_qubits());
  for (const auto& g : layer.gates) apply_gate(state, g);
}

QuantumState apply_layer(QuantumState state, const GateLayer& layer) {
  apply_layer_inplace(state, layer);
  return state;
}

// ---------------------------------------------------------------- measurement

std::vector<std::pair<std::uint64_t, double>> outcome_distribution(const QuantumState& state,
                                                                   const std::vector<int>& qubits) {
  for (int q : qubits)
    if (q < 0 || q >= state.num_qubits()) throw Error(ErrorKind::Range, "measured qubit out of range");
  std::vector<std::pair<std::uint64_t, double>> d;
  d.reserve(state.entries().size());
  for (const auto& [idx, a] : state.entries()) d.emplace_back(gather_bits(idx, qubits), std::norm(a));
  std::sort(d.begin(), d.end());
  std::size_t w = 0;
  for (std::size_t r = 0; r < d.size();) {
    auto o = d[r].first;
    double p = 0;
    while (r < d.size() && d[r].first == o) p += d[r++].second;
    d[w++] = {o, p};
  }
  d.resize(w);
  return d;
}

Measurement measure_outcome(const QuantumState& state, const std::vector<int>& qubits,
                            std::uint64_t outcome) {
  for (int q : qubits)
    if (q < 0 || q >= state.num_qubits()) throw Error(ErrorKind::Range, "measured qubit out of range");
  std::vector<QuantumState::Entry> kept;
  double p = 0;
  for (const auto& e : state.entries())
    if (gather_bits(e.first, qubits) == outcome) {
      kept.push_back(e);
      p += std::norm(e.second);
    }
  if (p <= 1e-24) throw Error(ErrorKind::ImpossibleOutcome, "requested outcome has zero probability");
  Measurement m;
  m.outcome = outcome;
  m.probability = p;
  m.post = state;
  m.post.assign(std::move(kept));
  m.post.renormalize();
  return m;
}

Measurement measure(const QuantumState& state, const std::vector<int>& qubits, Rng& rng) {
  const auto dist = outcome_distribution(state, qubits);
  double total = 0;
  for (const auto& [o, p] : dist) total += p;
  const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  double acc = 0;
  std::uint64_t chosen = dist.back().first;
  for (const auto& [o, p] : dist) {
    acc += p;
    if (u < acc) {
      chosen = o;
      break;
    }
  }
  return measure_outcome(state, qubits, chosen);
}

Measurement measure_all(const QuantumState& state, Rng& rng) {
  std::vector<int> all(state.num_qubits());
  std::iota(all.begin(), all.end(), 0);
  return measure(state, all, rng);
}

QuantumState random_state(int num_qubits, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(std::size_t{1} << num_qubits);
  double n = 0;
  for (auto& a : v) {
    a = cplx(g(rng), g(rng));
    n += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(n);
  return QuantumState::from_amplitudes(num_qubits, v);
}

// ---------------------------------------------------------------- ensembles and distances

int Ensemble::num_qubits() const {
  if (members.empty()) throw Error(ErrorKind::Precondition, "empty ensemble");
  return members.front().second.num_qubits();
}

void Ensemble::check() const {
  if (members.empty()) throw Error(ErrorKind::Precondition, "empty ensemble");
  double total = 0;
  const int nq = members.front().second.num_qubits();
  for (const auto& [p, s] : members) {
    if (p < 0 || p > 1) throw Error(ErrorKind::Precondition, "ensemble weight outside [0,1]");
    if (s.num_qubits() != nq) throw Error(ErrorKind::DimensionMismatch, "ensemble members differ in size");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTolerance)
    throw Error(ErrorKind::Precondition, "ensemble weights do not sum to 1");
}

cplx inner(const QuantumState& a, const QuantumState& b) {
  if (a.num_qubits() != b.num_qubits()) throw Error(ErrorKind::DimensionMismatch, "state sizes differ");
  cplx acc = 0;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      acc += std::conj(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return acc;
}

double fidelity(const QuantumState& a, const QuantumState& b) {
  return std::min(1.0, std::abs(inner(a, b)));
}

double bures(const QuantumState& a, const QuantumState& b) { return bures(Ensemble(a), Ensemble(b)); }

double trace_distance(const QuantumState& a, const QuantumState& b) {
  const double f = fidelity(a, b);
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

namespace {

MatrixXc density(const Ensemble& e) {
  const int nq = e.num_qubits();
  if (nq > kMaxDensityQubits)
    throw Error(ErrorKind::Unsupported, "density matrices are limited to 10 qubits");
  const Eigen::Index dim = Eigen::Index{1} << nq;
  MatrixXc rho = MatrixXc::Zero(dim, dim);
  for (const auto& [p, s] : e.members) {
    for (const auto& [i, ai] : s.entries())
      for (const auto& [j, aj] : s.entries()) rho(i, j) += p * ai * std::conj(aj);
  }
  return rho;
}

bool single_pure(const Ensemble& e) { return e.members.size() == 1; }

void check_pair(const Ensemble& a, const Ensemble& b) {
  a.check();
  b.check();
  if (a.num_qubits() != b.num_qubits()) throw Error(ErrorKind::DimensionMismatch, "state sizes differ");
}

}  // namespace

double fidelity(const Ensemble& a, const Ensemble& b) {
  check_pair(a, b);
  if (single_pure(a) && single_pure(b)) return fidelity(a.members[0].second, b.members[0].second);
  if (single_pure(a) || single_pure(b)) {
    const auto& psi = single_pure(a) ? a.members[0].second : b.members[0].second;
    const auto& mix = single_pure(a) ? b : a;
    double v = 0;
    for (const auto& [p, s] : mix.members) v += p * std::norm(inner(psi, s));
    return std::min(1.0, std::sqrt(std::max(0.0, v)));
  }
  const MatrixXc ra = density(a);
  const MatrixXc rb = density(b);
  Eigen::SelfAdjointEigenSolver<MatrixXc> ea(ra);
  Eigen::VectorXd ev = ea.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const MatrixXc sq = ea.eigenvectors() * ev.asDiagonal() * ea.eigenvectors().adjoint();
  const MatrixXc m = sq * rb * sq;
  Eigen::SelfAdjointEigenSolver<MatrixXc> em(m, Eigen::EigenvaluesOnly);
  return std::min(1.0, em.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum());
}

// Evaluated as min_V ||A - B V||_F over purifications A, B with columns
// sqrt(p_i)|psi_i>, V the polar factor of B^dag A. Avoids 2 - 2F cancellation.
double bures(const Ensemble& a, const Ensemble& b) {
  check_pair(a, b);
  std::vector<std::uint64_t> rows;
  for (const auto* e : {&a, &b})
    for (const auto& m : e->members)
      for (const auto& [idx, amp] : m.second.entries()) rows.push_back(idx);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  auto columns = [&](const Ensemble& e) {
    MatrixXc m = MatrixXc::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(e.members.size()));
    for (std::size_t c = 0; c < e.members.size(); ++c) {
      const double w = std::sqrt(std::max(0.0, e.members[c].first));
      for (const auto& [idx, amp] : e.members[c].second.entries()) {
        const auto r = std::lower_bound(rows.begin(), rows.end(), idx) - rows.begin();
        m(r, static_cast<Eigen::Index>(c)) = w * amp;
      }
    }
    return m;
  };
  const MatrixXc ma = columns(a);
  const MatrixXc mb = columns(b);
  const MatrixXc cross = mb.adjoint() * ma;
  Eigen::JacobiSVD<MatrixXc> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Index r = std::min(cross.rows(), cross.cols());
  const MatrixXc v = svd.matrixU().leftCols(r) * svd.matrixV().leftCols(r).adjoint();
  return (ma - mb * v).norm();
}

double trace_distance(const Ensemble& a, const Ensemble& b) {
  check_pair(a, b);
  if (single_pure(a) && single_pure(b)) return trace_distance(a.members[0].second, b.members[0].second);
  const MatrixXc d = density(a) - density(b);
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(d, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace hqc
