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

// Slow dense reference computations for tests. Everything here builds full
// 2^n matrices and shares no code with the oracle's row generator or the
// circuit simulator, so agreement is meaningful.

#ifndef QSAT_TESTS_REFERENCE_HPP
#define QSAT_TESTS_REFERENCE_HPP

#include <vector>

#include "qsat/exactfield.hpp"
#include "qsat/instance.hpp"
#include "qsat/reduction4sat.hpp"

namespace qsat::reference {

/// Bit of qubit q inside a global index over n qubits (qubit 0 = MSB).
inline std::size_t bit(std::size_t idx, std::size_t n, QubitId q) { return (idx >> (n - 1 - q)) & 1U; }

/// Full 2^n x 2^n matrix of `local` (2^w x 2^w, first support qubit = MSB)
/// acting on `support`, identity elsewhere.
inline Mat embed(const Mat &local, const std::vector<QubitId> &support, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t w = support.size();
  Mat out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      bool spectators_agree = true;
      for (QubitId q = 0; q < n && spectators_agree; ++q)
        if (std::find(support.begin(), support.end(), q) == support.end())
          spectators_agree = bit(r, n, q) == bit(c, n, q);
      if (!spectators_agree) continue;
      std::size_t lr = 0, lc = 0;
      for (std::size_t p = 0; p < w; ++p) {
        lr = 2 * lr + bit(r, n, support[p]);
        lc = 2 * lc + bit(c, n, support[p]);
      }
      out(r, c) = local(lr, lc);
    }
  return out;
}

/// Sum of the term projectors as one dense matrix.
inline Mat hamiltonian(const KSatInstance &inst) {
  const std::size_t dim = std::size_t{1} << inst.num_qubits();
  Mat h(dim, dim);
  for (const auto &t : inst.terms()) h = h + embed(projector_from_span(t.span), t.support, inst.num_qubits());
  return h;
}

/// dim ker H; H is PSD so this is the dimension of the common zero space.
inline std::size_t nullity(const KSatInstance &inst) {
  Mat h = hamiltonian(inst);
  return h.cols() - rank(h);
}

inline Rational energy(const KSatInstance &inst, const Vec &psi) {
  Vec hpsi = mat_vec(hamiltonian(inst), psi);
  Scalar num = inner(psi, hpsi);
  Scalar den = inner(psi, psi);
  return (num / den).re();
}

/// Whole-circuit unitary as a product of embedded gate matrices.
inline Mat circuit_unitary(const Circuit &c) {
  const std::size_t n = c.num_qubits();
  Mat u = Mat::identity(std::size_t{1} << n);
  for (const auto &g : c.gates) u = embed(g.matrix, g.qubits, n) * u;
  return u;
}

/// Acceptance probability from the dense unitary.
inline Rational acceptance(const Circuit &c, const Vec &psi_wit) {
  const std::size_t n = c.num_qubits();
  Vec start(std::size_t{1} << n);
  for (std::size_t w = 0; w < psi_wit.size(); ++w) start[w] = psi_wit[w];
  Vec fin = mat_vec(circuit_unitary(c), start);
  Rational acc = 0, norm = 0;
  for (std::size_t i = 0; i < fin.size(); ++i) {
    bool all_zero = true;
    for (QubitId b : c.out) all_zero = all_zero && bit(i, n, b) == 0;
    if (all_zero) acc += fin[i].norm2();
  }
  for (const auto &a : psi_wit) norm += a.norm2();
  return acc / norm;
}

/// dim{psi_wit : AP = 1}: AP = 1 iff no amplitude survives with an output
/// qubit at 1, which is a linear condition on psi_wit.
inline std::size_t accepting_dimension(const Circuit &c) {
  const std::size_t n = c.num_qubits();
  const std::size_t wit_dim = std::size_t{1} << c.n_wit;
  Mat u = circuit_unitary(c);
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    bool rejected = false;
    for (QubitId b : c.out) rejected = rejected || bit(i, n, b) == 1;
    if (!rejected) continue;
    Vec row(wit_dim);
    for (std::size_t w = 0; w < wit_dim; ++w) row[w] = u(i, w);  // input bits are zero
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return wit_dim;
  return wit_dim - rank(Mat::from_rows(rows, wit_dim));
}

/// The six clock rules applied literally to a symbol string.
inline bool legal_by_rules(const ClockState &s) {
  using enum ClockSymbol;
  const std::size_t L = s.size();
  auto active = [](ClockSymbol x) { return x == A1 || x == A2; };
  if (!(active(s[0]) || s[0] == D)) return false;
  if (!(active(s[L - 1]) || s[L - 1] == U)) return false;
  if (std::count_if(s.begin(), s.end(), active) > 1) return false;
  for (std::size_t j = 0; j < L; ++j) {
    if (s[j] == D)
      for (std::size_t k = 0; k < j; ++k)
        if (s[k] != D) return false;
    if (s[j] == U)
      for (std::size_t k = j + 1; k < L; ++k)
        if (s[k] != U) return false;
    if (s[j] == D && j + 1 < L && !(s[j + 1] == D || active(s[j + 1]))) return false;
  }
  return true;
}

}  // namespace qsat::reference

#endif  // QSAT_TESTS_REFERENCE_HPP
