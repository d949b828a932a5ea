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

// Brute-force ground truth over the full 2^n-dimensional state space.
//
// Every constraint term is expanded into rows of a linear system: one row per
// spanning covector and per setting of the spectator qubits. The allowed
// subspace is the kernel of that system, so an instance is satisfiable iff
// the kernel is nonzero. All of this is exact; min_eigenvalue_float() is the
// only floating-point entry point and exists for sizes where exact
// elimination is impractical.

#ifndef QSAT_ORACLE_HPP
#define QSAT_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "qsat/exactfield.hpp"
#include "qsat/instance.hpp"

namespace qsat::oracle {

inline constexpr std::size_t kDefaultExactLimit = 12;
inline constexpr std::size_t kFloatQubitLimit = 16;

struct Decision {
  bool satisfiable = false;
  std::size_t nullity = 0;
};

/// Sparse row: (column, value) sorted by column.
using SparseRow = std::vector<std::pair<std::uint32_t, Scalar>>;

/// Row-echelon basis over sparse rows with unit leading coefficients.
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == dim_; }

  /// Returns true when the row was independent of the basis.
  bool insert(SparseRow row);

  /// Basis of the common kernel of all inserted rows.
  std::vector<Vec> kernel() const;

 private:
  std::size_t dim_;
  std::map<std::uint32_t, SparseRow> rows_;  // keyed by pivot column
};

/// Calls sink(row) once per (span covector, spectator setting) of every term.
/// sink may return false to stop early.
void for_each_constraint_row(const KSatInstance &inst, const std::function<bool(SparseRow &&)> &sink);

Decision brute_satisfiable(const KSatInstance &inst, std::size_t limit = kDefaultExactLimit);
Decision brute_satisfiable(const QSatInstance &inst, std::size_t limit = kDefaultExactLimit);

/// Exact basis of the allowed (common zero) subspace.
std::vector<Vec> allowed_basis(const KSatInstance &inst, std::size_t limit = kDefaultExactLimit);
std::vector<Vec> allowed_basis(const QSatInstance &inst, std::size_t limit = kDefaultExactLimit);

/// True iff psi is annihilated by every constraint. psi must be nonzero.
bool verify_state(const KSatInstance &inst, const Vec &psi);
bool verify_state(const QSatInstance &inst, const Vec &psi);

/// sum_S <psi|Pi_S|psi> / <psi|psi>, exact.
Rational energy(const KSatInstance &inst, const Vec &psi);
Rational energy(const QSatInstance &inst, const Vec &psi);

struct FloatOptions {
  std::size_t max_qubits = kFloatQubitLimit;
  /// Above this dimension a matrix-free Lanczos iteration replaces dense
  /// diagonalization.
  std::size_t dense_limit = 1024;
  double residual_tol = 1e-9;
};

/// Smallest eigenvalue of sum_S Pi_S in double precision.
double min_eigenvalue_float(const KSatInstance &inst, const FloatOptions &opts = {});

}  // namespace qsat::oracle

#endif  // QSAT_ORACLE_HPP
