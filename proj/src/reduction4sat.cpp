// Copyright 2026 The qsat Authors
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

#include "qsat/reduction4sat.hpp"

#include <algorithm>
#include <map>

namespace qsat {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxSimulatedQubits = 24;

/// Basis ket of one clock particle.
Vec clock_ket(ClockSymbol s) {
  Vec v(4);
  v[static_cast<std::size_t>(s)] = 1;
  return v;
}

std::vector<QubitId> particle_qubits(std::size_t j) { return {2 * (j - 1), 2 * (j - 1) + 1}; }

/// Projector term onto span{ |x>_j |y>_k : x in xs, y in ys }.
KTerm particle_pair_term(std::size_t j, const std::vector<ClockSymbol> &xs, std::size_t k,
                         const std::vector<ClockSymbol> &ys, std::string label) {
  KTerm t;
  t.support = particle_qubits(j);
  for (QubitId q : particle_qubits(k)) t.support.push_back(q);
  for (ClockSymbol x : xs)
    for (ClockSymbol y : ys) t.span.push_back(kron(clock_ket(x), clock_ket(y)));
  t.label = std::move(label);
  return t;
}

KTerm particle_term(std::size_t j, ClockSymbol s, std::string label) {
  return {particle_qubits(j), {clock_ket(s)}, std::move(label)};
}

/// |s>_j (x) |1>_b on the computational qubit b.
KTerm flag_term(std::size_t L, std::size_t j, ClockSymbol s, QubitId b, std::string label) {
  KTerm t{particle_qubits(j), {kron(clock_ket(s), Vec{0, 1})}, std::move(label)};
  t.support.push_back(2 * L + b);
  return t;
}

void apply_gate(Vec &state, std::size_t n, const Gate &g) {
  const std::size_t w = g.qubits.size();
  const std::size_t local_dim = std::size_t{1} << w;
  std::vector<std::size_t> offset(local_dim, 0);
  std::size_t gate_mask = 0;
  for (std::size_t local = 0; local < local_dim; ++local)
    for (std::size_t p = 0; p < w; ++p)
      if ((local >> (w - 1 - p)) & 1U) offset[local] |= std::size_t{1} << (n - 1 - g.qubits[p]);
  for (QubitId q : g.qubits) gate_mask |= std::size_t{1} << (n - 1 - q);

  Vec in(local_dim);
  for (std::size_t base = 0; base < state.size(); ++base) {
    if (base & gate_mask) continue;
    bool all_zero = true;
    for (std::size_t l = 0; l < local_dim; ++l) {
      in[l] = state[base | offset[l]];
      all_zero = all_zero && in[l].is_zero();
    }
    if (all_zero) continue;
    Vec out = mat_vec(g.matrix, in);
    for (std::size_t l = 0; l < local_dim; ++l) state[base | offset[l]] = std::move(out[l]);
  }
}

Vec initial_state(const Circuit &c, const Vec &psi_wit) {
  if (psi_wit.size() != (std::size_t{1} << c.n_wit))
    throw ShapeError("witness has " + std::to_string(psi_wit.size()) + " amplitudes, expected 2^" +
                     std::to_string(c.n_wit));
  if (is_zero(psi_wit)) throw ContractError("witness state is zero");
  if (c.num_qubits() > kMaxSimulatedQubits) throw LimitError("circuit too wide to simulate");
  Vec q0(std::size_t{1} << c.num_qubits());
  std::copy(psi_wit.begin(), psi_wit.end(), q0.begin());  // input bits are the high bits
  return q0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Circuits

bool is_unitary(const Mat &m) {
  return m.rows() == m.cols() && mat_mul(m.adjoint(), m) == Mat::identity(m.rows());
}

void Circuit::validate() const {
  const std::size_t n = num_qubits();
  if (gates.empty()) throw ContractError("circuit has no gates");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] >= n) throw ContractError("output qubit " + std::to_string(out[i]) + " out of range");
    if (std::count(out.begin(), out.end(), out[i]) > 1) throw ContractError("output qubits repeat");
  }
  for (std::size_t t = 0; t < gates.size(); ++t) {
    const Gate &g = gates[t];
    const std::string where = "gate " + std::to_string(t);
    if (g.qubits.empty() || g.qubits.size() > 3) throw ContractError(where + ": gates act on 1 to 3 qubits");
    for (QubitId q : g.qubits) {
      if (q >= n) throw ContractError(where + ": qubit " + std::to_string(q) + " out of range");
      if (std::count(g.qubits.begin(), g.qubits.end(), q) > 1) throw ContractError(where + ": repeated qubit");
    }
    const std::size_t dim = std::size_t{1} << g.qubits.size();
    if (g.matrix.rows() != dim || g.matrix.cols() != dim) throw ContractError(where + ": matrix shape mismatch");
    if (!is_unitary(g.matrix)) throw ContractError(where + ": matrix is not unitary");
  }
}

Circuit circuit_from_json(const json &j) {
  Circuit c;
  c.n_in = index_from_json(require_field(j, "n_in", "circuit"), "n_in");
  c.n_wit = index_from_json(require_field(j, "n_wit", "circuit"), "n_wit");
  const json &out = require_array(require_field(j, "out", "circuit"), "out");
  for (std::size_t i = 0; i < out.size(); ++i) c.out.push_back(index_from_json(out[i], "out[" + std::to_string(i) + "]"));
  const json &gates = require_array(require_field(j, "gates", "circuit"), "gates");
  for (std::size_t t = 0; t < gates.size(); ++t) {
    std::string where = "gates[" + std::to_string(t) + "]";
    Gate g;
    const json &qs = require_array(require_field(gates[t], "qubits", where), where + ".qubits");
    for (std::size_t p = 0; p < qs.size(); ++p)
      g.qubits.push_back(index_from_json(qs[p], where + ".qubits[" + std::to_string(p) + "]"));
    if (g.qubits.empty() || g.qubits.size() > 3) throw ParseError(where + ": gates act on 1 to 3 qubits");
    std::size_t dim = std::size_t{1} << g.qubits.size();
    g.matrix = mat_from_json(require_field(gates[t], "matrix", where), dim, dim, where + ".matrix");
    c.gates.push_back(std::move(g));
  }
  try {
    c.validate();
  } catch (const ContractError &e) {
    throw ParseError(std::string("circuit: ") + e.what());
  }
  return c;
}

Circuit parse_circuit(std::string_view text) { return circuit_from_json(parse_json(text)); }

json circuit_to_json(const Circuit &c) {
  json gates = json::array();
  for (const auto &g : c.gates) gates.push_back({{"qubits", g.qubits}, {"matrix", mat_to_json(g.matrix)}});
  return {{"n_in", c.n_in}, {"n_wit", c.n_wit}, {"out", c.out}, {"gates", gates}};
}

// ---------------------------------------------------------------------------
// Clock

std::string clock_state_string(const ClockState &s) {
  static const char *names[] = {"u", "a1", "a2", "d"};
  std::string out = "|";
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j) out += ",";
    out += names[static_cast<std::size_t>(s[j])];
  }
  return out + ">";
}

std::size_t clock_index(const ClockState &s) {
  std::size_t idx = 0;
  for (ClockSymbol x : s) idx = 4 * idx + static_cast<std::size_t>(x);
  return idx;
}

std::vector<ClockState> legal_clock_states(std::size_t L) {
  if (L == 0) throw ContractError("clock needs at least one particle");
  std::vector<ClockState> out;
  for (std::size_t j = 0; j < L; ++j)
    for (ClockSymbol active : {ClockSymbol::A1, ClockSymbol::A2}) {
      ClockState s(L, ClockSymbol::U);
      std::fill(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(j), ClockSymbol::D);
      s[j] = active;
      out.push_back(std::move(s));
    }
  return out;
}

namespace {

void append_clock_terms(std::size_t L, KSatInstance &inst) {
  using enum ClockSymbol;
  auto jk = [](std::size_t j, std::size_t k) { return "[" + std::to_string(j) + "," + std::to_string(k) + "]"; };
  inst.add_term(particle_term(1, U, "clock1"));
  inst.add_term(particle_term(L, D, "clock2"));
  for (std::size_t j = 1; j <= L; ++j)
    for (std::size_t k = j + 1; k <= L; ++k) inst.add_term(particle_pair_term(j, {A1, A2}, k, {A1, A2}, "clock3" + jk(j, k)));
  for (std::size_t j = 1; j <= L; ++j)
    for (std::size_t k = j + 1; k <= L; ++k) inst.add_term(particle_pair_term(j, {A1, A2, U}, k, {D}, "clock4" + jk(j, k)));
  for (std::size_t j = 1; j <= L; ++j)
    for (std::size_t k = j + 1; k <= L; ++k) inst.add_term(particle_pair_term(j, {U}, k, {A1, A2, D}, "clock5" + jk(j, k)));
  for (std::size_t j = 1; j < L; ++j) inst.add_term(particle_pair_term(j, {D}, j + 1, {U}, "clock6" + jk(j, j + 1)));
}

}  // namespace

KSatInstance clock_terms(std::size_t L) {
  if (L == 0) throw ContractError("clock needs at least one particle");
  KSatInstance inst(2 * L, 4);
  append_clock_terms(L, inst);
  return inst;
}

// ---------------------------------------------------------------------------
// Emission

KSatInstance emit_hamiltonian(const Circuit &c, const EmitOptions &opts) {
  using enum ClockSymbol;
  if (opts.k != 4 && opts.k != 5) throw ContractError("locality must be 4 or 5");
  c.validate();
  const std::size_t L = c.length();
  for (std::size_t t = 0; t < L; ++t)
    if (c.gates[t].qubits.size() + 2 > opts.k)
      throw ArityError("gate " + std::to_string(t) + " acts on " + std::to_string(c.gates[t].qubits.size()) +
                       " qubits; use k=5 for 3-qubit gates");

  KSatInstance inst(2 * L + c.num_qubits(), opts.k);
  append_clock_terms(L, inst);
  for (QubitId b = 0; b < c.n_in; ++b) inst.add_term(flag_term(L, 1, A1, b, "init[" + std::to_string(b) + "]"));

  for (std::size_t t = 1; t <= L; ++t) {
    const Gate &g = c.gates[t - 1];
    const std::size_t dim = g.matrix.rows();
    KTerm term{particle_qubits(t), {}, "prop[" + std::to_string(t) + "]"};
    for (QubitId q : g.qubits) term.support.push_back(2 * L + q);
    for (std::size_t v = 0; v < dim; ++v) {
      Vec e(dim);
      e[v] = 1;
      // |a1>|v> - |a2> U|v>
      Vec span = kron(clock_ket(A1), e) - kron(clock_ket(A2), g.matrix.column(v));
      term.span.push_back(std::move(span));
    }
    inst.add_term(std::move(term));
  }
  for (std::size_t t = 1; t < L; ++t) {
    Vec span = kron(clock_ket(A2), clock_ket(U)) - kron(clock_ket(D), clock_ket(A1));
    KTerm term{particle_qubits(t), {std::move(span)}, "prop'[" + std::to_string(t) + "]"};
    for (QubitId q : particle_qubits(t + 1)) term.support.push_back(q);
    inst.add_term(std::move(term));
  }
  if (opts.include_out)
    for (QubitId b : c.out) inst.add_term(flag_term(L, L, A2, b, "out[" + std::to_string(b) + "]"));
  return inst;
}

KSatInstance merge_terms(const KSatInstance &inst) {
  std::map<std::vector<QubitId>, std::size_t> slot;
  std::vector<KTerm> merged;
  for (const auto &t : inst.terms()) {
    auto [it, fresh] = slot.emplace(t.support, merged.size());
    if (fresh) {
      merged.push_back(t);
      continue;
    }
    KTerm &m = merged[it->second];
    m.span.insert(m.span.end(), t.span.begin(), t.span.end());
    m.label += "+" + t.label;
  }
  KSatInstance out(inst.num_qubits(), inst.locality());
  for (auto &t : merged) out.add_term(std::move(t));
  return out;
}

json reduction_to_json(const Circuit &c, const KSatInstance &inst) {
  const std::size_t L = c.length();
  json j = ksat_to_json(inst);
  json particles = json::array();
  for (std::size_t p = 1; p <= L; ++p) particles.push_back(particle_qubits(p));
  j["header"] = {{"L", L},
                 {"N", c.num_qubits()},
                 {"n_in", c.n_in},
                 {"n_wit", c.n_wit},
                 {"out", c.out},
                 {"clock_particles", particles},
                 {"computational_offset", 2 * L},
                 {"encoding", {{"u", "00"}, {"a1", "01"}, {"a2", "10"}, {"d", "11"}}}};
  return j;
}

// ---------------------------------------------------------------------------
// Simulation

Vec run_circuit(const Circuit &c, const Vec &psi_wit) {
  Vec state = initial_state(c, psi_wit);
  for (const auto &g : c.gates) apply_gate(state, c.num_qubits(), g);
  return state;
}

Vec history_state(const Circuit &c, const Vec &psi_wit) {
  const std::size_t n = c.num_qubits();
  const std::size_t L = c.length();
  if (2 * L + n > kMaxSimulatedQubits) throw LimitError("history state too large to expand");
  const std::size_t comp_dim = std::size_t{1} << n;
  Vec omega(comp_dim << (2 * L));
  std::vector<ClockState> clocks = legal_clock_states(L);

  Vec q = initial_state(c, psi_wit);
  for (std::size_t t = 0; t < L; ++t) {
    std::size_t before = clock_index(clocks[2 * t]) * comp_dim;
    for (std::size_t i = 0; i < comp_dim; ++i) omega[before + i] += q[i];
    apply_gate(q, n, c.gates[t]);
    std::size_t after = clock_index(clocks[2 * t + 1]) * comp_dim;
    for (std::size_t i = 0; i < comp_dim; ++i) omega[after + i] += q[i];
  }
  return omega;
}

Rational acceptance_probability(const Circuit &c, const Vec &psi_wit) {
  const std::size_t n = c.num_qubits();
  Vec final_state = run_circuit(c, psi_wit);
  std::size_t out_mask = 0;
  for (QubitId b : c.out) out_mask |= std::size_t{1} << (n - 1 - b);
  Rational accepted = 0;
  for (std::size_t i = 0; i < final_state.size(); ++i)
    if ((i & out_mask) == 0) accepted += final_state[i].norm2();
  Rational norm = 0;
  for (const auto &a : psi_wit) norm += a.norm2();
  Rational p = accepted / norm;
  p.canonicalize();
  return p;
}

}  // namespace qsat
