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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Pass criterion numbers as arguments to run
// a subset.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "circuits.hpp"
#include "qsat/classical2sat.hpp"
#include "qsat/generator.hpp"
#include "qsat/oracle.hpp"
#include "qsat/reduction4sat.hpp"
#include "qsat/solver2sat.hpp"
#include "reference.hpp"

using namespace qsat;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool parallel(const Vec &a, const Vec &b) { return !is_zero(a) && !is_zero(b) && is_in_span(a, std::vector<Vec>{b}); }

QSatInstance singlet_chain(std::size_t n) {
  QSatInstance inst(n);
  for (QubitId q = 0; q + 1 < n; ++q) inst.insert_tensor(q, q + 1, epsilon());
  return inst;
}

/// Seeded instance with n in [2,7] and a mix of ranks, units and products.
QSatInstance mixed_instance(std::uint64_t seed) {
  Rng rng(seed * 7919 + 1);
  GenOptions o;
  o.n = 2 + rng.below(6);
  o.pairs = rng.below(2 * o.n + 1);
  o.units = rng.coin(0.3) ? rng.below(3) : 0;
  static const RankDist kDists[] = {{1, 0, 0, 0}, {0.6, 0.3, 0.1, 0}, {0.5, 0.25, 0.2, 0.05}, {0.3, 0.4, 0.3, 0}};
  o.rank_dist = kDists[rng.below(4)];
  o.product_fraction = rng.coin(0.5) ? 0.3 : 0.0;
  o.seed = seed;
  return generate_instance(o);
}

// Criteria 1 and 2 share one sweep.
struct Sweep {
  std::size_t instances = 0, sat = 0, decision_mismatch = 0, verify_failures = 0;
  std::string first_bad;
  double seconds = 0;
};

const Sweep &oracle_sweep() {
  static Sweep s = [] {
    Sweep out;
    auto t0 = Clock::now();
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
      QSatInstance inst = mixed_instance(seed);
      SolveResult r = solve(inst);
      bool truth = oracle::brute_satisfiable(inst).satisfiable;
      ++out.instances;
      if (r.satisfiable() != truth) {
        ++out.decision_mismatch;
        if (out.first_bad.empty()) out.first_bad = "seed " + std::to_string(seed);
      }
      if (r.satisfiable()) {
        ++out.sat;
        if (!oracle::verify_state(inst, r.state.amplitudes())) ++out.verify_failures;
      }
    }
    out.seconds = seconds_since(t0);
    return out;
  }();
  return s;
}

Outcome oracle_agreement() {
  const Sweep &s = oracle_sweep();
  std::ostringstream os;
  os << s.instances << " instances, " << s.sat << " sat, " << s.decision_mismatch << " mismatches";
  if (!s.first_bad.empty()) os << " (first " << s.first_bad << ")";
  return {s.instances >= 10000 && s.decision_mismatch == 0, os.str()};
}

Outcome assignment_exactness() {
  const Sweep &s = oracle_sweep();
  std::ostringstream os;
  os << s.sat << " sat outputs checked, " << s.verify_failures << " failed";
  return {s.sat > 0 && s.verify_failures == 0, os.str()};
}

Outcome singlet_chain_reproduction() {
  QSatInstance inst = singlet_chain(3);
  ClosureResult c = close_homogeneous(inst);
  bool outer = c.complete && c.instance.constraint_rank(0, 2) == 1 &&
               parallel(c.instance.pairs().at(QubitPair(0, 2)).tensors()[0].entries(), epsilon().entries());
  std::size_t nullity = oracle::brute_satisfiable(inst).nullity;
  std::ostringstream os;
  os << "outer-pair singlet " << (outer ? "generated" : "missing") << ", nullity " << nullity;
  return {outer && nullity == 4, os.str()};
}

Outcome combine_soundness() {
  Rng rng(2026);
  std::size_t failures = 0, nontrivial = 0;
  for (int t = 0; t < 1000; ++t) {
    Mat phi = random_tensor(rng, rng.coin(0.25)), theta = random_tensor(rng, rng.coin(0.25));
    Mat omega = lemma1_combine(phi, theta);
    // index 4a + 2b + c on C^8
    std::vector<Vec> rows;
    for (std::size_t s = 0; s < 2; ++s) {
      Vec r1(8), r2(8);
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) {
          r1[4 * x + 2 * y + s] = phi(x, y);
          r2[4 * s + 2 * x + y] = theta(x, y);
        }
      rows.push_back(r1);
      rows.push_back(r2);
    }
    auto joint = nullspace(Mat::from_rows(rows, 8));
    if (!is_zero(omega.entries())) ++nontrivial;
    for (const Vec &v : joint)
      for (std::size_t b = 0; b < 2; ++b) {
        Scalar acc;
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t c = 0; c < 2; ++c) fused_add_mul(acc, omega(a, c), v[4 * a + 2 * b + c]);
        if (!acc.is_zero()) ++failures;
      }
  }
  std::ostringstream os;
  os << "1000 pairs (" << nontrivial << " with nonzero omega), " << failures << " nonzero contractions";
  return {failures == 0, os.str()};
}

/// Lifts every allowed state of the reduced instance through the step and
/// checks the nullity and that lifted states satisfy the original.
bool step_equivalent(const QSatInstance &before, const StepResult &step) {
  std::size_t n0 = oracle::brute_satisfiable(before).nullity;
  if (step.unsat) return n0 == 0;
  std::vector<Vec> reduced = oracle::allowed_basis(step.instance);
  if (reduced.size() != n0) return false;
  ReductionTranscript tr;
  tr.original_n = before.num_qubits();
  tr.steps = step.steps;
  std::vector<Vec> lifted;
  for (const Vec &v : reduced) {
    FactorizedState st(step.instance.num_qubits());
    if (step.instance.num_qubits() > 0) {
      std::vector<QubitId> all(step.instance.num_qubits());
      for (QubitId q = 0; q < all.size(); ++q) all[q] = q;
      st.add_block({all, v});
    }
    Vec psi = reconstruct(tr, st).amplitudes();
    if (!oracle::verify_state(before, psi)) return false;
    lifted.push_back(psi);
  }
  return rank(lifted) == n0;
}

Outcome step_equivalence() {
  Rng rng(515);
  std::size_t counts[3] = {0, 0, 0}, failures = 0;
  for (int t = 0; t < 1000; ++t) {
    std::size_t n = 2 + rng.below(4);
    int kind = t % 3;
    QSatInstance inst(n);
    QubitPair pair(0, 1 + rng.below(n - 1));
    if (kind < 2) {
      std::size_t r = kind == 0 ? 3 : 2;
      while (inst.constraint_rank(pair.lo, pair.hi) < r) inst.insert_tensor(pair.lo, pair.hi, random_tensor(rng));
    } else {
      inst.insert_unit(rng.below(n), random_vec(rng, 2));
    }
    for (std::size_t k = 0, extra = rng.below(2 * n); k < extra; ++k) {
      QubitId a = rng.below(n), b = rng.below(n);
      if (a == b || (kind < 2 && QubitPair(a, b) == pair) || inst.constraint_rank(a, b) >= 2) continue;
      inst.insert_tensor(a, b, random_tensor(rng, rng.coin(0.3)));
    }
    StepResult step = kind == 0 ? eliminate_rank3(inst, pair) : kind == 1 ? merge_rank2(inst, pair) : propagate_units(inst);
    ++counts[kind];
    if (!step_equivalent(inst, step)) ++failures;
  }
  std::ostringstream os;
  os << counts[0] << " rank-3, " << counts[1] << " rank-2, " << counts[2] << " unit steps; " << failures << " failed";
  return {failures == 0, os.str()};
}

Outcome complete_set_construction() {
  Rng rng(606);
  std::size_t complete = 0, failures = 0;
  for (int t = 0; t < 3000; ++t) {
    std::size_t n = 2 + rng.below(6);
    QSatInstance inst(n);
    for (std::size_t k = 0, m = rng.below(2 * n + 1); k < m; ++k) {
      QubitId a = rng.below(n), b = rng.below(n);
      if (a != b && inst.constraint_rank(a, b) == 0) inst.insert_tensor(a, b, random_tensor(rng, rng.coin(0.5)));
    }
    ClosureResult c = close_homogeneous(inst);
    if (!c.complete) continue;
    ++complete;
    Vec psi = FactorizedState::product(product_assignment(c.instance)).amplitudes();
    if (oracle::energy(inst, psi) != 0 || oracle::energy(c.instance, psi) != 0) ++failures;
  }
  std::ostringstream os;
  os << complete << " complete closures, " << failures << " with nonzero energy";
  return {complete > 0 && failures == 0, os.str()};
}

Outcome classical() {
  std::size_t mismatches = 0, unsat = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    std::size_t n = 1 + seed % 16;
    Cnf2 f = random_cnf(n, 1 + (seed * 13) % (3 * n), seed);
    ClassicalResult r = solve_classical(f);
    if (!r.satisfiable()) ++unsat;
    if (r.satisfiable() != brute_classical(f) || (r.satisfiable() && !f.satisfied_by(*r.assignment))) ++mismatches;
  }

  Cnf2 big = random_cnf(100000, 400000, 12345);
  auto t0 = Clock::now();
  ClassicalResult br = solve_classical(big);
  double secs = seconds_since(t0);
  bool big_ok = !br.satisfiable() || big.satisfied_by(*br.assignment);

  std::size_t embed_mismatch = 0;
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    std::size_t n = 1 + seed % 6;
    Cnf2 f = random_cnf(n, seed % (3 * n + 1), seed + 50000);
    if (solve(embed_classical(f)).satisfiable() != solve_classical(f).satisfiable()) ++embed_mismatch;
  }
  std::ostringstream os;
  os << "1000 enumerations (" << unsat << " unsat), " << mismatches << " mismatches; n=1e5 m=4e5 in " << secs
     << " s (work " << br.work << "); 600 embeddings, " << embed_mismatch << " mismatches";
  return {mismatches == 0 && secs < 5.0 && big_ok && embed_mismatch == 0, os.str()};
}

Outcome clock_soundness() {
  std::size_t bad = 0;
  for (std::size_t L = 1; L <= 6; ++L) {
    KSatInstance h = clock_terms(L);
    std::set<std::size_t> annihilated;
    for (std::size_t idx = 0; idx < (std::size_t{1} << (2 * L)); ++idx) {
      // a basis state survives a term iff every span vector vanishes on it
      bool ok = true;
      for (const auto &t : h.terms()) {
        std::size_t local = 0;
        for (QubitId q : t.support) local = 2 * local + reference::bit(idx, 2 * L, q);
        for (const auto &s : t.span) ok = ok && s[local].is_zero();
      }
      if (ok) annihilated.insert(idx);
    }
    std::set<std::size_t> legal;
    for (const auto &s : legal_clock_states(L)) legal.insert(clock_index(s));
    if (annihilated != legal) ++bad;
  }
  using enum ClockSymbol;
  std::vector<ClockState> eight{{A1, U, U, U}, {A2, U, U, U}, {D, A1, U, U}, {D, A2, U, U},
                                {D, D, A1, U}, {D, D, A2, U}, {D, D, D, A1}, {D, D, D, A2}};
  bool four = legal_clock_states(4) == eight;
  std::ostringstream os;
  os << "L=1..6, " << bad << " mismatched; L=4 list " << (four ? "matches" : "differs");
  return {bad == 0 && four, os.str()};
}

Outcome history_nullity() {
  std::size_t checked = 0, failures = 0;
  std::ostringstream os;
  for (const auto &[name, c] : testing::micro_circuits()) {
    EmitOptions no_out;
    no_out.include_out = false;
    std::size_t without = oracle::brute_satisfiable(emit_hamiltonian(c, no_out)).nullity;
    std::size_t with = oracle::brute_satisfiable(emit_hamiltonian(c)).nullity;
    std::size_t accepting = reference::accepting_dimension(c);
    ++checked;
    if (without != (std::size_t{1} << c.n_wit) || with != accepting) ++failures;
    os << name << " " << without << "/" << with << "; ";
  }
  os << checked << " circuits, " << failures << " failed";
  return {checked >= 3 && failures == 0, os.str()};
}

Outcome negative_gap() {
  using namespace testing;
  Circuit reject = micro_circuits()[4].circuit;
  double small = oracle::min_eigenvalue_float(emit_hamiltonian(reject));
  // three particles, four computational qubits: 10 qubits on the iterative path
  Circuit larger{1, 3, {0}, {{{0}, gate_x()}, {{1, 2}, gate_cnot()}, {{3}, gate_r()}}};
  oracle::FloatOptions iterative;
  iterative.dense_limit = 0;
  double large = oracle::min_eigenvalue_float(emit_hamiltonian(larger), iterative);
  std::ostringstream os;
  os << "lambda_min " << small << " (L=2), " << large << " (L=3, iterative)";
  return {small > 1e-6 && large > 1e-6, os.str()};
}

Outcome scaling() {
  double worst = 0;
  std::size_t solved = 0, verified = 0, reductions = 0;
  auto t0 = Clock::now();
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    GenOptions o;
    o.n = 500;
    o.pairs = 250;
    o.seed = seed;
    QSatInstance inst = generate_instance(o);
    SolveResult r = solve(inst);
    worst = std::max(worst, r.stats.max_attempts_per_n3);
    reductions += r.stats.qubit_reductions;
    if (r.satisfiable()) {
      ++solved;
      if (verify_factorized(inst, r.state)) ++verified;
    }
  }
  std::ostringstream os;
  os << "3 instances n=500, " << solved << " solved, " << verified << " verified, " << reductions
     << " qubit reductions, max attempts/n^3 " << worst << " (bound 1), " << seconds_since(t0) << " s";
  return {solved == 3 && verified == 3 && worst <= 1.0, os.str()};
}

struct Criterion {
  int id;
  const char *name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char **argv) {
  std::vector<Criterion> all{
      {1, "oracle agreement", oracle_agreement},
      {2, "assignment exactness", assignment_exactness},
      {3, "singlet chain", singlet_chain_reproduction},
      {4, "combination rule soundness", combine_soundness},
      {5, "step equivalence", step_equivalence},
      {6, "complete-set product assignment", complete_set_construction},
      {7, "classical 2-SAT", classical},
      {8, "clock soundness", clock_soundness},
      {9, "history-state nullity", history_nullity},
      {10, "negative-instance gap", negative_gap},
      {11, "scaling at n=500", scaling},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));

  int failed = 0;
  for (const auto &c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
