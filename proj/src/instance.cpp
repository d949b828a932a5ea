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

#include "qsat/instance.hpp"

#include <algorithm>
#include <numeric>

namespace qsat {

using nlohmann::json;

QubitPair::QubitPair(QubitId a, QubitId b) : lo(std::min(a, b)), hi(std::max(a, b)) {
  if (a == b) throw ContractError("pair constraint on a single qubit " + std::to_string(a));
}

// ---------------------------------------------------------------------------
// PairConstraint / UnitConstraint

std::vector<ConstraintTensor> PairConstraint::oriented(QubitId a) const {
  if (a == pair_.lo) return tensors_;
  std::vector<ConstraintTensor> out;
  out.reserve(tensors_.size());
  for (const auto &t : tensors_) out.push_back(t.transpose());
  return out;
}

std::vector<Vec> PairConstraint::covectors() const {
  std::vector<Vec> out;
  out.reserve(tensors_.size());
  for (const auto &t : tensors_) out.push_back(t.entries());
  return out;
}

bool PairConstraint::insert(const ConstraintTensor &t) {
  if (t.rows() != 2 || t.cols() != 2) throw ShapeError("constraint tensor must be 2x2");
  const Vec &flat = t.entries();
  if (is_zero(flat)) return false;
  std::vector<Vec> current = covectors();
  if (is_in_span(flat, current)) return false;
  tensors_.push_back(Mat::reshape(primitive(flat), 2, 2));
  return true;
}

bool UnitConstraint::insert(const Vec &u) {
  if (u.size() != 2) throw ShapeError("unit covector must have length 2");
  if (is_zero(u) || is_in_span(u, covectors_)) return false;
  covectors_.push_back(primitive(u));
  return true;
}

// ---------------------------------------------------------------------------
// QSatInstance

void QSatInstance::check_qubit(QubitId q) const {
  if (q >= n_) throw ContractError("qubit " + std::to_string(q) + " out of range for n=" + std::to_string(n_));
}

InsertOutcome QSatInstance::insert_tensor(QubitId a, QubitId b, const ConstraintTensor &t) {
  check_qubit(a);
  check_qubit(b);
  if (t.rows() != 2 || t.cols() != 2) throw ShapeError("constraint tensor must be 2x2");
  QubitPair key(a, b);
  const ConstraintTensor &canonical = a < b ? t : t.transpose();
  if (canonical.is_zero()) return {false, constraint_rank(a, b)};
  auto it = pairs_.try_emplace(key, key).first;
  bool grew = it->second.insert(canonical);
  return {grew, it->second.rank()};
}

InsertOutcome QSatInstance::insert_unit(QubitId q, const Vec &u) {
  check_qubit(q);
  if (u.size() != 2) throw ShapeError("unit covector must have length 2");
  if (is_zero(u)) return {false, unit_rank(q)};
  auto it = units_.try_emplace(q, q).first;
  bool grew = it->second.insert(u);
  return {grew, it->second.rank()};
}

std::size_t QSatInstance::constraint_rank(QubitId a, QubitId b) const {
  const PairConstraint *p = find_pair(a, b);
  return p == nullptr ? 0 : p->rank();
}

std::size_t QSatInstance::unit_rank(QubitId q) const {
  const UnitConstraint *u = find_unit(q);
  return u == nullptr ? 0 : u->rank();
}

const PairConstraint *QSatInstance::find_pair(QubitId a, QubitId b) const {
  if (a == b) return nullptr;
  auto it = pairs_.find(QubitPair(a, b));
  return it == pairs_.end() ? nullptr : &it->second;
}

const UnitConstraint *QSatInstance::find_unit(QubitId q) const {
  auto it = units_.find(q);
  return it == units_.end() ? nullptr : &it->second;
}

std::vector<std::set<QubitId>> QSatInstance::adjacency() const {
  std::vector<std::set<QubitId>> adj(n_);
  for (const auto &[key, pc] : pairs_) {
    adj[key.lo].insert(key.hi);
    adj[key.hi].insert(key.lo);
  }
  return adj;
}

std::size_t QSatInstance::max_pair_rank() const {
  std::size_t r = 0;
  for (const auto &[key, pc] : pairs_) r = std::max(r, pc.rank());
  return r;
}

// ---------------------------------------------------------------------------
// KSatInstance

void KSatInstance::add_term(KTerm term) {
  const std::size_t w = term.support.size();
  if (w == 0) throw ContractError("k-SAT term with empty support");
  if (w > k_) throw ContractError("term support of size " + std::to_string(w) + " exceeds k=" + std::to_string(k_));
  for (QubitId q : term.support)
    if (q >= n_) throw ContractError("term qubit " + std::to_string(q) + " out of range");
  std::vector<QubitId> sorted = term.support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ContractError("term support has repeated qubits");
  const std::size_t dim = std::size_t{1} << w;
  for (const auto &v : term.span)
    if (v.size() != dim) throw ShapeError("term span vector has wrong dimension");

  if (sorted != term.support) {
    // position of each original support qubit inside the sorted support
    std::vector<std::size_t> pos(w);
    for (std::size_t p = 0; p < w; ++p)
      pos[p] = static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), term.support[p]) - sorted.begin());
    for (auto &v : term.span) {
      Vec permuted(dim);
      for (std::size_t old_idx = 0; old_idx < dim; ++old_idx) {
        std::size_t new_idx = 0;
        for (std::size_t p = 0; p < w; ++p) {
          std::size_t bit = (old_idx >> (w - 1 - p)) & 1U;
          new_idx |= bit << (w - 1 - pos[p]);
        }
        permuted[new_idx] = v[old_idx];
      }
      v = std::move(permuted);
    }
    term.support = sorted;
  }
  term.span = independent_subset(term.span);
  if (term.span.empty()) return;
  terms_.push_back(std::move(term));
}

KSatInstance to_ksat(const QSatInstance &inst) {
  KSatInstance out(inst.num_qubits(), 2);
  for (const auto &[key, pc] : inst.pairs()) {
    KTerm term{{key.lo, key.hi}, {}, "pair"};
    for (const auto &c : pc.covectors()) term.span.push_back(conj(c));
    out.add_term(std::move(term));
  }
  for (const auto &[q, uc] : inst.units()) {
    KTerm term{{q}, {}, "unit"};
    for (const auto &u : uc.covectors()) term.span.push_back(conj(u));
    out.add_term(std::move(term));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::size_t index_from_json(const json &j, const std::string &where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

const json &require_field(const json &obj, const char *key, const std::string &where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"");
  return *it;
}

const json &require_array(const json &j, const std::string &where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  return j;
}


json scalar_to_json(const Scalar &s) { return json::array({format_rational(s.re()), format_rational(s.im())}); }

Scalar scalar_from_json(const json &j, const std::string &where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw ParseError(where + ": scalar must be [\"p/q\",\"r/s\"]");
  try {
    return Scalar(parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>()));
  } catch (const ParseError &e) {
    throw ParseError(where + ": " + e.what());
  }
}

json vec_to_json(const Vec &v) {
  json out = json::array();
  for (const auto &x : v) out.push_back(scalar_to_json(x));
  return out;
}

Vec vec_from_json(const json &j, const std::string &where) {
  require_array(j, where);
  Vec v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

json mat_to_json(const Mat &m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vec_to_json(m.row(r)));
  return out;
}

Mat mat_from_json(const json &j, std::size_t rows, std::size_t cols, const std::string &where) {
  require_array(j, where);
  if (j.size() != rows) throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
  std::vector<Vec> r;
  for (std::size_t i = 0; i < rows; ++i) {
    std::string w = where + "[" + std::to_string(i) + "]";
    Vec v = vec_from_json(j[i], w);
    if (v.size() != cols) throw ParseError(w + ": expected " + std::to_string(cols) + " columns");
    r.push_back(std::move(v));
  }
  return Mat::from_rows(r, cols);
}

QSatInstance instance_from_json(const json &j) {
  std::size_t n = index_from_json(require_field(j, "n", "instance"), "n");
  QSatInstance inst(n);
  // orientation in which each unordered pair was first seen
  std::map<QubitPair, bool> seen_reversed;

  if (auto it = j.find("pairs"); it != j.end()) {
    require_array(*it, "pairs");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json &entry = (*it)[i];
      std::string where = "pairs[" + std::to_string(i) + "]";
      const json &qs = require_array(require_field(entry, "qubits", where), where + ".qubits");
      if (qs.size() != 2) throw ParseError(where + ".qubits: expected two qubits");
      std::size_t a = index_from_json(qs[0], where + ".qubits[0]");
      std::size_t b = index_from_json(qs[1], where + ".qubits[1]");
      if (a >= n || b >= n) throw ParseError(where + ".qubits: index out of range for n=" + std::to_string(n));
      if (a == b) throw ParseError(where + ".qubits: repeated qubit");
      QubitPair key(a, b);
      bool reversed = a > b;
      auto [pos, fresh] = seen_reversed.emplace(key, reversed);
      if (!fresh && pos->second != reversed) throw ParseError(where + ": duplicate pair with conflicting order");

      std::vector<Mat> tensors;
      if (auto t = entry.find("tensors"); t != entry.end()) {
        require_array(*t, where + ".tensors");
        for (std::size_t k = 0; k < t->size(); ++k)
          tensors.push_back(mat_from_json((*t)[k], 2, 2, where + ".tensors[" + std::to_string(k) + "]"));
      }
      if (auto p = entry.find("projector"); p != entry.end()) {
        Mat proj = mat_from_json(*p, 4, 4, where + ".projector");
        if (!(proj * proj == proj) || !(proj.adjoint() == proj))
          throw ParseError(where + ".projector: not an orthogonal projector");
        std::vector<Vec> cols;
        for (std::size_t c = 0; c < 4; ++c) cols.push_back(proj.column(c));
        for (const auto &ket : independent_subset(cols)) tensors.push_back(Mat::reshape(conj(ket), 2, 2));
      }
      for (const auto &t : tensors) inst.insert_tensor(a, b, t);
    }
  }

  if (auto it = j.find("units"); it != j.end()) {
    require_array(*it, "units");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json &entry = (*it)[i];
      std::string where = "units[" + std::to_string(i) + "]";
      std::size_t q = index_from_json(require_field(entry, "qubit", where), where + ".qubit");
      if (q >= n) throw ParseError(where + ".qubit: index out of range for n=" + std::to_string(n));
      const json &vs = require_array(require_field(entry, "vectors", where), where + ".vectors");
      for (std::size_t k = 0; k < vs.size(); ++k) {
        std::string w = where + ".vectors[" + std::to_string(k) + "]";
        Vec u = vec_from_json(vs[k], w);
        if (u.size() != 2) throw ParseError(w + ": expected a 2-vector");
        inst.insert_unit(q, u);
      }
    }
  }
  return inst;
}

QSatInstance parse_instance(std::string_view text) { return instance_from_json(parse_json(text)); }

json instance_to_json(const QSatInstance &inst) {
  json pairs = json::array();
  for (const auto &[key, pc] : inst.pairs()) {
    json tensors = json::array();
    for (const auto &t : pc.tensors()) tensors.push_back(mat_to_json(t));
    pairs.push_back({{"qubits", {key.lo, key.hi}}, {"tensors", tensors}});
  }
  json units = json::array();
  for (const auto &[q, uc] : inst.units()) {
    json vs = json::array();
    for (const auto &u : uc.covectors()) vs.push_back(vec_to_json(u));
    units.push_back({{"qubit", q}, {"vectors", vs}});
  }
  return {{"n", inst.num_qubits()}, {"pairs", pairs}, {"units", units}};
}

namespace {

void format_into(const json &j, std::size_t depth, std::string &out) {
  std::string flat = j.dump();
  if (!j.is_structured() || j.empty() || flat.size() + depth <= 100) {
    out += flat;
    return;
  }
  const std::string pad(depth + 1, ' ');
  const bool obj = j.is_object();
  out += obj ? "{\n" : "[\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (obj) out += json(it.key()).dump() + ": ";
    format_into(*it, depth + 1, out);
  }
  out += "\n" + std::string(depth, ' ') + (obj ? "}" : "]");
}

}  // namespace

std::string format_json(const json &j) {
  std::string out;
  format_into(j, 0, out);
  return out + "\n";
}

std::string serialize_instance(const QSatInstance &inst) { return format_json(instance_to_json(inst)); }

KSatInstance ksat_from_json(const json &j) {
  std::size_t n = index_from_json(require_field(j, "n", "instance"), "n");
  std::size_t k = index_from_json(require_field(j, "k", "instance"), "k");
  KSatInstance inst(n, k);
  const json &terms = require_array(require_field(j, "terms", "instance"), "terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string where = "terms[" + std::to_string(i) + "]";
    const json &sup = require_array(require_field(terms[i], "support", where), where + ".support");
    KTerm term;
    for (std::size_t p = 0; p < sup.size(); ++p) {
      std::size_t q = index_from_json(sup[p], where + ".support[" + std::to_string(p) + "]");
      if (q >= n) throw ParseError(where + ".support: index out of range for n=" + std::to_string(n));
      term.support.push_back(q);
    }
    const json &span = require_array(require_field(terms[i], "span", where), where + ".span");
    std::size_t dim = std::size_t{1} << term.support.size();
    for (std::size_t s = 0; s < span.size(); ++s) {
      std::string w = where + ".span[" + std::to_string(s) + "]";
      Vec v = vec_from_json(span[s], w);
      if (v.size() != dim) throw ParseError(w + ": expected length " + std::to_string(dim));
      term.span.push_back(std::move(v));
    }
    if (auto l = terms[i].find("label"); l != terms[i].end() && l->is_string()) term.label = l->get<std::string>();
    try {
      inst.add_term(std::move(term));
    } catch (const std::logic_error &e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return inst;
}

KSatInstance parse_ksat(std::string_view text) { return ksat_from_json(parse_json(text)); }

json ksat_to_json(const KSatInstance &inst) {
  json terms = json::array();
  for (const auto &t : inst.terms()) {
    json span = json::array();
    for (const auto &v : t.span) span.push_back(vec_to_json(v));
    json entry = {{"support", t.support}, {"span", span}};
    if (!t.label.empty()) entry["label"] = t.label;
    terms.push_back(std::move(entry));
  }
  return {{"n", inst.num_qubits()}, {"k", inst.locality()}, {"terms", terms}};
}

std::string serialize_ksat(const KSatInstance &inst) { return format_json(ksat_to_json(inst)); }

}  // namespace qsat
