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

// Exact quantum 2-SAT solver.
//
// solve() repeatedly shrinks the instance until it is either refuted or
// homogeneous (every pair constraint has rank <= 1, no one-qubit
// constraints):
//
//   rank 4 pair            -> unsatisfiable
//   rank 3 pair (a,b)      -> the pair is pinned to its single allowed state;
//                             constraints touching a or b are contracted
//                             with it and both qubits disappear
//   rank 2 pair (a,b)      -> a and b become one logical qubit whose basis
//                             is the 2-dim allowed subspace of the pair
//   one-qubit constraints  -> the qubit is pinned and contracted away
//
// A homogeneous instance is closed under the rule that constraints phi on
// (a,b) and theta on (b,c) imply phi*eps*theta on (a,c). Closure either
// raises some pair to rank 2 (back to the merge step) or reaches a complete
// set, for which a product assignment is built greedily. Every step is
// logged so the reduced assignment can be lifted back to the input qubits.

#ifndef QSAT_SOLVER2SAT_HPP
#define QSAT_SOLVER2SAT_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qsat/exactfield.hpp"
#include "qsat/instance.hpp"

namespace qsat {

/// The pair is fixed to kept_state (4-vector, index 2*x_lo + x_hi).
struct Rank3Eliminate {
  QubitPair pair;
  Vec kept_state;
};

/// The pair collapses onto `logical` (= pair.lo before relabeling); logical
/// basis state g maps to basis[g] on the pair.
struct Rank2Merge {
  QubitPair pair;
  QubitId logical = 0;
  std::array<Vec, 2> basis;
};

struct UnitFix {
  QubitId qubit = 0;
  Vec state;
};

/// old label -> new label, or nullopt for a removed qubit.
struct Relabel {
  std::vector<std::optional<QubitId>> map;

  std::size_t new_size() const;
};

using ReductionStep = std::variant<Rank3Eliminate, Rank2Merge, UnitFix, Relabel>;

struct ReductionTranscript {
  std::size_t original_n = 0;
  std::vector<ReductionStep> steps;

  /// Qubit count after replaying every step.
  std::size_t final_n() const;
};

/// State factorized into independent blocks. A block lists its qubits with
/// the first one as the most significant amplitude index bit.
struct StateBlock {
  std::vector<QubitId> qubits;
  Vec amplitudes;
};

class FactorizedState {
 public:
  FactorizedState() = default;
  explicit FactorizedState(std::size_t n) : n_(n) {}

  static FactorizedState product(const std::vector<Vec> &states);

  std::size_t num_qubits() const { return n_; }
  void set_num_qubits(std::size_t n) { n_ = n; }
  const std::vector<StateBlock> &blocks() const { return blocks_; }
  std::vector<StateBlock> &blocks() { return blocks_; }

  void add_block(StateBlock block) { blocks_.push_back(std::move(block)); }
  bool is_product() const;
  /// Per-qubit states; requires is_product().
  std::vector<Vec> product_states() const;
  /// Dense 2^n amplitude vector. Throws LimitError above max_qubits.
  Vec amplitudes(std::size_t max_qubits = 24) const;

 private:
  std::size_t n_ = 0;
  std::vector<StateBlock> blocks_;
};

enum class SolveStatus { Unsat, SatProduct, SatState };

struct SolveStats {
  std::size_t qubit_reductions = 0;
  std::size_t closure_rounds = 0;
  /// Largest attempts / n^3 ratio seen in one closure round.
  double max_attempts_per_n3 = 0.0;
  std::size_t total_attempts = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unsat;
  FactorizedState state;
  ReductionTranscript transcript;
  SolveStats stats;

  bool satisfiable() const { return status != SolveStatus::Unsat; }
};

/// omega = phi * eps * theta, with phi on (a,b) and theta on (b,c).
ConstraintTensor lemma1_combine(const ConstraintTensor &phi, const ConstraintTensor &theta);

struct StepResult {
  QSatInstance instance;
  std::vector<ReductionStep> steps;
  bool unsat = false;
};

StepResult eliminate_rank3(const QSatInstance &inst, QubitPair pair);
StepResult merge_rank2(const QSatInstance &inst, QubitPair pair);
StepResult propagate_units(const QSatInstance &inst);

struct ClosureResult {
  bool complete = false;
  QSatInstance instance;
  /// Pair that reached rank 2 when !complete.
  QubitPair escalated;
  std::size_t attempts = 0;
  std::size_t edges_added = 0;
};

ClosureResult close_homogeneous(const QSatInstance &inst);

/// True iff the homogeneous instance is a complete set of constraints.
bool is_complete(const QSatInstance &inst);

/// Product satisfying assignment of a complete homogeneous instance.
std::vector<Vec> product_assignment(const QSatInstance &inst);

SolveResult solve(const QSatInstance &inst);

/// Lifts a state of the reduced instance back through the transcript.
FactorizedState reconstruct(const ReductionTranscript &transcript, const FactorizedState &reduced);

/// Exact check of every constraint against a factorized state, one or two
/// blocks at a time, so large product states never get expanded.
bool verify_factorized(const QSatInstance &inst, const FactorizedState &state);

nlohmann::json result_to_json(const SolveResult &result);
nlohmann::json transcript_to_json(const ReductionTranscript &transcript);
/// Reads a state file: a solve result, a block list, or raw amplitudes.
FactorizedState state_from_json(const nlohmann::json &j, std::size_t n);

}  // namespace qsat

#endif  // QSAT_SOLVER2SAT_HPP
