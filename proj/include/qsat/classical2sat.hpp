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

// Linear-time classical 2-SAT via the implication graph.
//
// Literal l of variable v is vertex 2v (positive) or 2v+1 (negated). A clause
// equal to l | ~l' contributes the edge l -> l'; a clause p | q is read both
// as p | ~(~q) and as q | ~(~p), so it adds p -> ~q and q -> ~p. A path from
// l to l' then means "l false forces l' false".

#ifndef QSAT_CLASSICAL2SAT_HPP
#define QSAT_CLASSICAL2SAT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsat/instance.hpp"

namespace qsat {

struct Literal {
  std::uint32_t var = 0;
  bool negated = false;

  std::uint32_t vertex() const { return 2 * var + (negated ? 1U : 0U); }
  Literal operator~() const { return {var, !negated}; }
  bool holds(const std::vector<bool> &x) const { return x[var] != negated; }
  friend bool operator==(const Literal &, const Literal &) = default;
};

using Clause2 = std::pair<Literal, Literal>;

class Cnf2 {
 public:
  Cnf2() = default;
  explicit Cnf2(std::size_t n) : n_(n) {}

  std::size_t num_vars() const { return n_; }
  const std::vector<Clause2> &clauses() const { return clauses_; }

  /// Adds l | l'. Returns false when the clause is a tautology and was dropped.
  bool add_clause(Literal a, Literal b);

  bool satisfied_by(const std::vector<bool> &x) const;

 private:
  std::size_t n_ = 0;
  std::vector<Clause2> clauses_;
};

/// DIMACS subset: "p cnf n m", two literals per clause, "c" comment lines.
Cnf2 parse_dimacs(std::string_view text);

class ImplicationGraph {
 public:
  explicit ImplicationGraph(const Cnf2 &f);

  std::size_t num_vertices() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return targets_.size(); }
  std::span<const std::uint32_t> successors(std::uint32_t v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  bool has_edge(std::uint32_t from, std::uint32_t to) const;

 private:
  std::vector<std::uint32_t> offsets_;  // CSR
  std::vector<std::uint32_t> targets_;
};

struct SccResult {
  /// Component index per vertex; Tarjan numbers components in reverse
  /// topological order (sinks first).
  std::vector<std::uint32_t> component;
  std::size_t count = 0;
  /// Vertices plus edges touched by the search.
  std::size_t work = 0;
};

SccResult strongly_connected_components(const ImplicationGraph &g);

struct ClassicalResult {
  std::optional<std::vector<bool>> assignment;  // nullopt = UNSAT
  std::size_t work = 0;

  bool satisfiable() const { return assignment.has_value(); }
};

ClassicalResult solve_classical(const Cnf2 &f);

/// 2^n enumeration; for testing.
bool brute_classical(const Cnf2 &f);

/// Diagonal quantum instance forbidding each clause's falsifying assignment.
QSatInstance embed_classical(const Cnf2 &f);

std::string assignment_string(const std::vector<bool> &x);

}  // namespace qsat

#endif  // QSAT_CLASSICAL2SAT_HPP
