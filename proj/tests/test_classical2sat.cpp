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

#include "qsat/classical2sat.hpp"

#include <gtest/gtest.h>

#include "qsat/generator.hpp"
#include "qsat/oracle.hpp"
#include "qsat/solver2sat.hpp"

using namespace qsat;

namespace {

Literal pos(std::uint32_t v) { return {v, false}; }
Literal neg(std::uint32_t v) { return {v, true}; }

}  // namespace

TEST(ClassicalTest, Examples) {
  Cnf2 f(2);
  f.add_clause(pos(0), pos(1));
  f.add_clause(neg(0), pos(1));
  ClassicalResult r = solve_classical(f);
  ASSERT_TRUE(r.satisfiable());
  EXPECT_TRUE((*r.assignment)[1]);
  EXPECT_TRUE(f.satisfied_by(*r.assignment));

  Cnf2 g(2);
  g.add_clause(pos(0), pos(1));
  g.add_clause(neg(0), neg(1));
  g.add_clause(pos(0), neg(1));
  g.add_clause(neg(0), pos(1));
  EXPECT_FALSE(solve_classical(g).satisfiable());
  EXPECT_FALSE(brute_classical(g));
}

TEST(ClassicalTest, TautologiesAreDropped) {
  Cnf2 f(1);
  EXPECT_FALSE(f.add_clause(pos(0), neg(0)));
  EXPECT_TRUE(f.clauses().empty());
  EXPECT_TRUE(f.add_clause(pos(0), pos(0)));
  ClassicalResult r = solve_classical(f);
  ASSERT_TRUE(r.satisfiable());
  EXPECT_TRUE((*r.assignment)[0]);
}

TEST(ClassicalTest, AgreesWithEnumeration) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Cnf2 f = random_cnf(12, 30, seed);
    ClassicalResult r = solve_classical(f);
    EXPECT_EQ(r.satisfiable(), brute_classical(f)) << "seed " << seed;
    if (r.satisfiable()) EXPECT_TRUE(f.satisfied_by(*r.assignment)) << "seed " << seed;
  }
}

TEST(ImplicationGraphTest, EdgesFollowClauses) {
  Cnf2 f(2);
  f.add_clause(pos(0), neg(1));
  ImplicationGraph g(f);
  EXPECT_EQ(g.num_vertices(), 4U);
  EXPECT_EQ(g.num_edges(), 2U);
  // x0 | ~x1 gives x0 -> x1 and ~x1 -> ~x0
  EXPECT_TRUE(g.has_edge(pos(0).vertex(), pos(1).vertex()));
  EXPECT_TRUE(g.has_edge(neg(1).vertex(), neg(0).vertex()));
  EXPECT_FALSE(g.has_edge(pos(1).vertex(), pos(0).vertex()));
}

TEST(ImplicationGraphTest, SccSymmetryUnderNegation) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Cnf2 f = random_cnf(20, 40, seed);
    ImplicationGraph g(f);
    for (std::uint32_t u = 0; u < g.num_vertices(); ++u)
      for (std::uint32_t v : g.successors(u)) EXPECT_TRUE(g.has_edge(v ^ 1U, u ^ 1U));
    SccResult scc = strongly_connected_components(g);
    for (std::uint32_t u = 0; u < g.num_vertices(); ++u)
      for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
        EXPECT_EQ(scc.component[u] == scc.component[v], scc.component[u ^ 1U] == scc.component[v ^ 1U]);
  }
}

TEST(ImplicationGraphTest, WorkIsLinear) {
  for (std::size_t n : {1000U, 10000U, 50000U}) {
    Cnf2 f = random_cnf(n, 4 * n, n);
    ClassicalResult r = solve_classical(f);
    EXPECT_LE(r.work, 3 * (n + f.clauses().size())) << n;
    if (r.satisfiable()) EXPECT_TRUE(f.satisfied_by(*r.assignment));
  }
}

//===----------------------------------------------------------------------===//
// DIMACS
//===----------------------------------------------------------------------===//

TEST(DimacsTest, Parses) {
  Cnf2 f = parse_dimacs("c demo\np cnf 3 2\n1 -2 0\n-3 2 0\n");
  EXPECT_EQ(f.num_vars(), 3U);
  ASSERT_EQ(f.clauses().size(), 2U);
  EXPECT_EQ(f.clauses()[0].first, pos(0));
  EXPECT_EQ(f.clauses()[0].second, neg(1));
  EXPECT_EQ(f.clauses()[1].first, neg(2));
}

TEST(DimacsTest, Errors) {
  for (const char *bad : {"1 2 0\n", "p cnf 2 1\n1 2 3 0\n", "p cnf 2 1\n1 0\n", "p cnf 2 2\n1 2 0\n",
                          "p cnf 2 1\n1 5 0\n", "p cnf x 1\n1 2 0\n"})
    EXPECT_THROW(parse_dimacs(bad), ParseError) << bad;
}

//===----------------------------------------------------------------------===//
// Quantum embedding
//===----------------------------------------------------------------------===//

TEST(EmbedTest, ForbidsFalsifyingAssignment) {
  Cnf2 f(2);
  f.add_clause(pos(0), neg(1));
  QSatInstance inst = embed_classical(f);
  ASSERT_EQ(inst.constraint_rank(0, 1), 1U);
  Mat expect(2, 2);
  expect(0, 1) = 1;
  EXPECT_EQ(inst.pairs().at(QubitPair(0, 1)).tensors()[0], expect);

  QSatInstance empty = embed_classical(Cnf2(3));
  EXPECT_EQ(empty.num_qubits(), 3U);
  EXPECT_TRUE(empty.pairs().empty());
}

TEST(EmbedTest, QuantumDecisionMatchesClassical) {
  Rng rng(5);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    std::size_t n = 1 + rng.below(6);
    Cnf2 f = random_cnf(n, rng.below(3 * n + 1), seed);
    QSatInstance inst = embed_classical(f);
    bool classical = solve_classical(f).satisfiable();
    EXPECT_EQ(solve(inst).satisfiable(), classical) << "seed " << seed;
    EXPECT_EQ(oracle::brute_satisfiable(inst).satisfiable, classical) << "seed " << seed;
  }
}

TEST(AssignmentStringTest, Bits) { EXPECT_EQ(assignment_string({true, false, true}), "101"); }
