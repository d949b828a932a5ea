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

// Circuit-to-Hamiltonian reduction onto quantum 4-SAT.
//
// Qubit layout of the emitted instance: clock particle j (1-based) occupies
// qubits 2(j-1) and 2(j-1)+1, computational qubit b is qubit 2L+b. A clock
// particle's symbol is stored as two bits, high bit on the lower qubit:
//
//   u -> 00   a1 -> 01   a2 -> 10   d -> 11
//
// Computational qubits 0..n_in-1 form the input register, the rest hold the
// witness. Inside a gate matrix the first listed qubit is the most
// significant bit.

#ifndef QSAT_REDUCTION4SAT_HPP
#define QSAT_REDUCTION4SAT_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qsat/exactfield.hpp"
#include "qsat/instance.hpp"

namespace qsat {

/// Gate arity not representable at the requested locality.
struct ArityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Gate {
  std::vector<QubitId> qubits;
  Mat matrix;
};

struct Circuit {
  std::size_t n_in = 0;
  std::size_t n_wit = 0;
  std::vector<QubitId> out;
  std::vector<Gate> gates;

  std::size_t num_qubits() const { return n_in + n_wit; }
  std::size_t length() const { return gates.size(); }

  /// Checks indices, shapes and exact unitarity; throws ContractError.
  void validate() const;
};

bool is_unitary(const Mat &m);

Circuit circuit_from_json(const nlohmann::json &j);
Circuit parse_circuit(std::string_view text);
nlohmann::json circuit_to_json(const Circuit &c);

enum class ClockSymbol : std::uint8_t { U = 0, A1 = 1, A2 = 2, D = 3 };
using ClockState = std::vector<ClockSymbol>;

std::string clock_state_string(const ClockState &s);
/// Base-4 index with particle 1 as the most significant digit.
std::size_t clock_index(const ClockState &s);

/// C_1, C_1', ..., C_L, C_L'.
std::vector<ClockState> legal_clock_states(std::size_t L);

/// H_clock alone, on the 2L clock qubits.
KSatInstance clock_terms(std::size_t L);

struct EmitOptions {
  std::size_t k = 4;
  bool include_out = true;
};

KSatInstance emit_hamiltonian(const Circuit &c, const EmitOptions &opts = {});

/// Folds terms with the same support into one term spanning the union.
KSatInstance merge_terms(const KSatInstance &inst);

/// Reduction output: the instance plus a header describing the layout.
nlohmann::json reduction_to_json(const Circuit &c, const KSatInstance &inst);

/// U_L...U_1 applied to |0...0>_in (x) psi_wit, exactly.
Vec run_circuit(const Circuit &c, const Vec &psi_wit);

/// Unnormalized history state over clock (x) computational qubits.
Vec history_state(const Circuit &c, const Vec &psi_wit);

/// Probability that every output qubit reads 0, exact.
Rational acceptance_probability(const Circuit &c, const Vec &psi_wit);

}  // namespace qsat

#endif  // QSAT_REDUCTION4SAT_HPP
