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

#ifndef QSAT_INSTANCE_HPP
#define QSAT_INSTANCE_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qsat/exactfield.hpp"

namespace qsat {

using QubitId = std::size_t;

/// Unordered qubit pair, always stored with lo < hi.
struct QubitPair {
  QubitId lo = 0;
  QubitId hi = 0;

  QubitPair() = default;
  QubitPair(QubitId a, QubitId b);

  bool contains(QubitId q) const { return q == lo || q == hi; }
  QubitId partner(QubitId q) const { return q == lo ? hi : lo; }

  friend auto operator<=>(const QubitPair &, const QubitPair &) = default;
};

/// 2x2 tensor contracted directly against the state: the constraint is
/// sum_{x,y} t(x,y) psi_{..x..y..} = 0 with x indexing the lower qubit.
using ConstraintTensor = Mat;

/// Forbidden two-qubit subspace stored as independent spanning tensors.
class PairConstraint {
 public:
  explicit PairConstraint(QubitPair pair) : pair_(pair) {}

  QubitPair pair() const { return pair_; }
  std::size_t rank() const { return tensors_.size(); }
  const std::vector<ConstraintTensor> &tensors() const { return tensors_; }

  /// Tensors with index order (a, b); transposed when a is the higher qubit.
  std::vector<ConstraintTensor> oriented(QubitId a) const;

  /// Flattened 4-vectors (index 2*x + y).
  std::vector<Vec> covectors() const;

  /// Returns true if t was independent of the stored span and got appended.
  bool insert(const ConstraintTensor &t);

 private:
  QubitPair pair_;
  std::vector<ConstraintTensor> tensors_;
};

/// Forbidden one-qubit subspace, as covectors u with sum_x u_x psi_{..x..} = 0.
class UnitConstraint {
 public:
  explicit UnitConstraint(QubitId qubit) : qubit_(qubit) {}

  QubitId qubit() const { return qubit_; }
  std::size_t rank() const { return covectors_.size(); }
  const std::vector<Vec> &covectors() const { return covectors_; }

  bool insert(const Vec &u);

 private:
  QubitId qubit_;
  std::vector<Vec> covectors_;
};

struct InsertOutcome {
  bool extended = false;
  std::size_t rank = 0;
};

/// Quantum 2-SAT instance on n qubits.
class QSatInstance {
 public:
  QSatInstance() = default;
  explicit QSatInstance(std::size_t n) : n_(n) {}

  std::size_t num_qubits() const { return n_; }

  /// Inserts t, indexed (alpha_a, alpha_b). Zero tensors and tensors already
  /// in the span leave the instance unchanged.
  InsertOutcome insert_tensor(QubitId a, QubitId b, const ConstraintTensor &t);
  InsertOutcome insert_unit(QubitId q, const Vec &u);

  std::size_t constraint_rank(QubitId a, QubitId b) const;
  std::size_t unit_rank(QubitId q) const;

  const PairConstraint *find_pair(QubitId a, QubitId b) const;
  const UnitConstraint *find_unit(QubitId q) const;

  const std::map<QubitPair, PairConstraint> &pairs() const { return pairs_; }
  const std::map<QubitId, UnitConstraint> &units() const { return units_; }

  /// Neighbors in the constraint graph E = {pairs with a nonzero span}.
  std::vector<std::set<QubitId>> adjacency() const;

  /// Highest rank among pair constraints (0 when none).
  std::size_t max_pair_rank() const;

 private:
  void check_qubit(QubitId q) const;

  std::size_t n_ = 0;
  std::map<QubitPair, PairConstraint> pairs_;
  std::map<QubitId, UnitConstraint> units_;
};

/// One k-local projector term: projector onto span(span) on `support`,
/// tensored with identity elsewhere. Basis order is lexicographic in
/// support order, most significant bit = first support qubit.
struct KTerm {
  std::vector<QubitId> support;
  std::vector<Vec> span;
  std::string label;
};

class KSatInstance {
 public:
  KSatInstance() = default;
  KSatInstance(std::size_t n, std::size_t k) : n_(n), k_(k) {}

  std::size_t num_qubits() const { return n_; }
  std::size_t locality() const { return k_; }
  const std::vector<KTerm> &terms() const { return terms_; }

  /// Validates and appends a term. The support is sorted with the span
  /// permuted to match; dependent span vectors are dropped.
  void add_term(KTerm term);

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<KTerm> terms_;
};

/// Converts a 2-SAT instance to k-SAT terms (kets = conjugated tensors).
KSatInstance to_ksat(const QSatInstance &inst);

// JSON forms --------------------------------------------------------------

nlohmann::json scalar_to_json(const Scalar &s);
Scalar scalar_from_json(const nlohmann::json &j, const std::string &where);
nlohmann::json vec_to_json(const Vec &v);
Vec vec_from_json(const nlohmann::json &j, const std::string &where);
nlohmann::json mat_to_json(const Mat &m);
Mat mat_from_json(const nlohmann::json &j, std::size_t rows, std::size_t cols, const std::string &where);

QSatInstance parse_instance(std::string_view text);
QSatInstance instance_from_json(const nlohmann::json &j);
nlohmann::json instance_to_json(const QSatInstance &inst);
std::string serialize_instance(const QSatInstance &inst);

KSatInstance parse_ksat(std::string_view text);
KSatInstance ksat_from_json(const nlohmann::json &j);
nlohmann::json ksat_to_json(const KSatInstance &inst);
std::string serialize_ksat(const KSatInstance &inst);

// Checked accessors; failures are ParseErrors prefixed with `where`.
std::size_t index_from_json(const nlohmann::json &j, const std::string &where);
const nlohmann::json &require_field(const nlohmann::json &obj, const char *key, const std::string &where);
const nlohmann::json &require_array(const nlohmann::json &j, const std::string &where);

/// Indented JSON with short arrays and objects kept on one line.
std::string format_json(const nlohmann::json &j);

/// Parses text as JSON, turning syntax errors into ParseError.
nlohmann::json parse_json(std::string_view text);

}  // namespace qsat

#endif  // QSAT_INSTANCE_HPP
