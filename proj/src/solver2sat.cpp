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

#include "qsat/solver2sat.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <tuple>

namespace qsat {

using nlohmann::json;

namespace {

// Flattened two-qubit index for (x on the lower qubit, y on the higher one).
constexpr std::size_t idx2(std::size_t x, std::size_t y) { return 2 * x + y; }

/// Relabel map that drops `removed` and shifts the survivors down.
Relabel drop_qubits(std::size_t n, std::initializer_list<QubitId> removed) {
  Relabel r;
  r.map.resize(n);
  QubitId next = 0;
  for (QubitId q = 0; q < n; ++q) {
    if (std::find(removed.begin(), removed.end(), q) != removed.end()) continue;
    r.map[q] = next++;
  }
  return r;
}

/// Copies every constraint that avoids the qubits in `skip` through the map.
void copy_untouched(const QSatInstance &src, const Relabel &relabel, std::initializer_list<QubitId> skip,
                    QSatInstance &dst) {
  auto touched = [&](QubitId q) { return std::find(skip.begin(), skip.end(), q) != skip.end(); };
  for (const auto &[key, pc] : src.pairs()) {
    if (touched(key.lo) || touched(key.hi)) continue;
    for (const auto &t : pc.tensors()) dst.insert_tensor(*relabel.map[key.lo], *relabel.map[key.hi], t);
  }
  for (const auto &[q, uc] : src.units()) {
    if (touched(q)) continue;
    for (const auto &u : uc.covectors()) dst.insert_unit(*relabel.map[q], u);
  }
}

/// Allowed two-qubit subspace of a pair constraint.
std::vector<Vec> allowed_pair_states(const PairConstraint &pc) {
  std::vector<Vec> rows = pc.covectors();
  std::vector<Vec> basis = nullspace(Mat::from_rows(rows, 4));
  for (auto &v : basis) v = primitive(v);
  return basis;
}

/// Splits a 2-qubit state into x (lower) and y (higher) when it is a product.
std::optional<std::pair<Vec, Vec>> factor_pair_state(const Vec &p) {
  Mat m = Mat::reshape(p, 2, 2);
  if (rank(m) != 1) return std::nullopt;
  std::size_t r = m.row(0) == Vec{0, 0} ? 1 : 0;
  Vec y = m.row(r);
  std::size_t k = y[0].is_zero() ? 1 : 0;
  Vec x{m(0, k) / y[k], m(1, k) / y[k]};
  return std::make_pair(primitive(x), primitive(y));
}

const std::vector<Vec> &root_candidates_prefix(std::size_t count) {
  static std::vector<Vec> cands;
  while (cands.size() < count) {
    std::size_t k = cands.size();
    if (k == 0) {
      cands.push_back({1, 0});
    } else if (k == 1) {
      cands.push_back({0, 1});
    } else {
      cands.push_back({1, static_cast<long>(k - 1)});
    }
  }
  return cands;
}

/// Single rank-1 tensor on (a,b), oriented (a,b).
ConstraintTensor edge_tensor(const QSatInstance &inst, QubitId a, QubitId b) {
  const PairConstraint *pc = inst.find_pair(a, b);
  return a < b ? pc->tensors().front() : pc->tensors().front().transpose();
}

}  // namespace

// ---------------------------------------------------------------------------
// Transcript bookkeeping

std::size_t Relabel::new_size() const {
  return static_cast<std::size_t>(std::count_if(map.begin(), map.end(), [](const auto &m) { return m.has_value(); }));
}

std::size_t ReductionTranscript::final_n() const {
  std::size_t n = original_n;
  for (const auto &step : steps)
    if (const auto *r = std::get_if<Relabel>(&step)) n = r->new_size();
  return n;
}

FactorizedState FactorizedState::product(const std::vector<Vec> &states) {
  FactorizedState s(states.size());
  for (QubitId q = 0; q < states.size(); ++q) s.add_block({{q}, states[q]});
  return s;
}

bool FactorizedState::is_product() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const StateBlock &b) { return b.qubits.size() == 1; });
}

std::vector<Vec> FactorizedState::product_states() const {
  if (!is_product()) throw ContractError("state is not a product state");
  std::vector<Vec> out(n_);
  for (const auto &b : blocks_) out[b.qubits.front()] = b.amplitudes;
  return out;
}

Vec FactorizedState::amplitudes(std::size_t max_qubits) const {
  if (n_ > max_qubits) throw LimitError("refusing to expand a " + std::to_string(n_) + "-qubit state");
  std::vector<bool> covered(n_, false);
  for (const auto &b : blocks_) {
    if (b.amplitudes.size() != (std::size_t{1} << b.qubits.size())) throw ShapeError("block amplitude size mismatch");
    for (QubitId q : b.qubits) {
      if (q >= n_ || covered[q]) throw ContractError("blocks do not partition the qubits");
      covered[q] = true;
    }
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end())
    throw ContractError("blocks do not cover every qubit");

  const std::size_t dim = std::size_t{1} << n_;
  Vec out(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    Scalar amp = 1;
    for (const auto &b : blocks_) {
      std::size_t local = 0;
      for (QubitId q : b.qubits) local = (local << 1) | ((idx >> (n_ - 1 - q)) & 1U);
      const Scalar &f = b.amplitudes[local];
      if (f.is_zero()) {
        amp = 0;
        break;
      }
      amp *= f;
    }
    out[idx] = std::move(amp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Local rules

ConstraintTensor lemma1_combine(const ConstraintTensor &phi, const ConstraintTensor &theta) {
  return phi * epsilon() * theta;
}

StepResult eliminate_rank3(const QSatInstance &inst, QubitPair pair) {
  const PairConstraint *pc = inst.find_pair(pair.lo, pair.hi);
  if (pc == nullptr || pc->rank() != 3) throw ContractError("eliminate_rank3: pair does not have rank 3");
  const QubitId a = pair.lo;
  const QubitId b = pair.hi;
  Vec kept = allowed_pair_states(*pc).front();

  Relabel relabel = drop_qubits(inst.num_qubits(), {a, b});
  StepResult out{QSatInstance(inst.num_qubits() - 2), {}, false};
  copy_untouched(inst, relabel, {a, b}, out.instance);

  for (const auto &[key, other] : inst.pairs()) {
    if (key == pair) continue;
    for (QubitId pinned : {a, b}) {
      if (!key.contains(pinned)) continue;
      QubitId d = key.partner(pinned);
      for (const auto &chi : other.oriented(pinned)) {
        // contract the pinned index with kept; the eliminated partner index
        // stays free and yields one covector on d per value
        for (std::size_t free = 0; free < 2; ++free) {
          Vec v(2);
          for (std::size_t delta = 0; delta < 2; ++delta)
            for (std::size_t x = 0; x < 2; ++x) {
              const Scalar &k = pinned == a ? kept[idx2(x, free)] : kept[idx2(free, x)];
              fused_add_mul(v[delta], chi(x, delta), k);
            }
          out.instance.insert_unit(*relabel.map[d], v);
        }
      }
    }
  }
  for (QubitId pinned : {a, b}) {
    const UnitConstraint *uc = inst.find_unit(pinned);
    if (uc == nullptr) continue;
    for (const auto &u : uc->covectors())
      for (std::size_t free = 0; free < 2; ++free) {
        Scalar s;
        for (std::size_t x = 0; x < 2; ++x)
          fused_add_mul(s, u[x], pinned == a ? kept[idx2(x, free)] : kept[idx2(free, x)]);
        if (!s.is_zero()) out.unsat = true;
      }
  }
  out.steps.emplace_back(Rank3Eliminate{pair, kept});
  out.steps.emplace_back(std::move(relabel));
  return out;
}

StepResult merge_rank2(const QSatInstance &inst, QubitPair pair) {
  const PairConstraint *pc = inst.find_pair(pair.lo, pair.hi);
  if (pc == nullptr || pc->rank() != 2) throw ContractError("merge_rank2: pair does not have rank 2");
  const QubitId a = pair.lo;
  const QubitId b = pair.hi;
  std::vector<Vec> basis = allowed_pair_states(*pc);

  Relabel relabel = drop_qubits(inst.num_qubits(), {b});
  const QubitId c = *relabel.map[a];
  StepResult out{QSatInstance(inst.num_qubits() - 1), {}, false};
  copy_untouched(inst, relabel, {a, b}, out.instance);

  // amplitude of merged basis state g at (x on `side`, y on the other member)
  auto basis_entry = [&](std::size_t g, QubitId side, std::size_t x, std::size_t y) -> const Scalar & {
    return side == a ? basis[g][idx2(x, y)] : basis[g][idx2(y, x)];
  };

  for (const auto &[key, other] : inst.pairs()) {
    if (key == pair) continue;
    for (QubitId side : {a, b}) {
      if (!key.contains(side)) continue;
      QubitId g = key.partner(side);
      for (const auto &chi : other.oriented(side)) {
        for (std::size_t free = 0; free < 2; ++free) {
          Mat merged(2, 2);
          for (std::size_t gamma = 0; gamma < 2; ++gamma)
            for (std::size_t delta = 0; delta < 2; ++delta)
              for (std::size_t x = 0; x < 2; ++x)
                fused_add_mul(merged(gamma, delta), chi(x, delta), basis_entry(gamma, side, x, free));
          out.instance.insert_tensor(c, *relabel.map[g], merged);
        }
      }
    }
  }
  for (QubitId side : {a, b}) {
    const UnitConstraint *uc = inst.find_unit(side);
    if (uc == nullptr) continue;
    for (const auto &u : uc->covectors())
      for (std::size_t free = 0; free < 2; ++free) {
        Vec w(2);
        for (std::size_t gamma = 0; gamma < 2; ++gamma)
          for (std::size_t x = 0; x < 2; ++x) fused_add_mul(w[gamma], u[x], basis_entry(gamma, side, x, free));
        out.instance.insert_unit(c, w);
      }
  }
  out.steps.emplace_back(Rank2Merge{pair, a, {basis[0], basis[1]}});
  out.steps.emplace_back(std::move(relabel));
  return out;
}

StepResult propagate_units(const QSatInstance &inst) {
  StepResult out{inst, {}, false};
  while (!out.instance.units().empty()) {
    const QSatInstance &cur = out.instance;
    const auto &[q, uc] = *cur.units().begin();
    if (uc.rank() >= 2) {
      out.unsat = true;
      return out;
    }
    const Vec &u = uc.covectors().front();
    Vec w = mat_vec(epsilon(), u);  // the unique state with u . w = 0

    Relabel relabel = drop_qubits(cur.num_qubits(), {q});
    QSatInstance next(cur.num_qubits() - 1);
    copy_untouched(cur, relabel, {q}, next);
    for (const auto &[key, pc] : cur.pairs()) {
      if (!key.contains(q)) continue;
      QubitId d = key.partner(q);
      for (const auto &chi : pc.oriented(q)) {
        Vec v(2);
        for (std::size_t delta = 0; delta < 2; ++delta)
          for (std::size_t x = 0; x < 2; ++x) fused_add_mul(v[delta], w[x], chi(x, delta));
        next.insert_unit(*relabel.map[d], v);
      }
    }
    out.steps.emplace_back(UnitFix{q, w});
    out.steps.emplace_back(std::move(relabel));
    out.instance = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homogeneous closure

namespace {

void require_homogeneous(const QSatInstance &inst, const char *who) {
  if (!inst.units().empty() || inst.max_pair_rank() > 1)
    throw ContractError(std::string(who) + ": instance is not homogeneous");
}

}  // namespace

ClosureResult close_homogeneous(const QSatInstance &inst) {
  require_homogeneous(inst, "close_homogeneous");
  ClosureResult res;
  res.instance = inst;
  QSatInstance &cur = res.instance;
  std::vector<std::set<QubitId>> adj = cur.adjacency();

  // (a, middle, c) with a < c
  std::deque<std::tuple<QubitId, QubitId, QubitId>> work;
  for (QubitId mid = 0; mid < adj.size(); ++mid)
    for (auto i = adj[mid].begin(); i != adj[mid].end(); ++i)
      for (auto j = std::next(i); j != adj[mid].end(); ++j) work.emplace_back(*i, mid, *j);

  while (!work.empty()) {
    auto [a, mid, c] = work.front();
    work.pop_front();
    ++res.attempts;
    ConstraintTensor omega = lemma1_combine(edge_tensor(cur, a, mid), edge_tensor(cur, mid, c));
    if (omega.is_zero()) continue;
    InsertOutcome ins = cur.insert_tensor(a, c, omega);
    if (!ins.extended) continue;
    if (ins.rank >= 2) {
      res.escalated = QubitPair(a, c);
      return res;
    }
    ++res.edges_added;
    for (QubitId x : adj[a]) work.emplace_back(std::min(x, c), a, std::max(x, c));
    for (QubitId x : adj[c]) work.emplace_back(std::min(x, a), c, std::max(x, a));
    adj[a].insert(c);
    adj[c].insert(a);
  }
  if (!is_complete(cur)) throw std::logic_error("close_homogeneous: closure finished but completeness scan failed");
  res.complete = true;
  return res;
}

bool is_complete(const QSatInstance &inst) {
  require_homogeneous(inst, "is_complete");
  std::vector<std::set<QubitId>> adj = inst.adjacency();
  for (QubitId mid = 0; mid < adj.size(); ++mid)
    for (auto i = adj[mid].begin(); i != adj[mid].end(); ++i)
      for (auto j = std::next(i); j != adj[mid].end(); ++j) {
        ConstraintTensor omega = lemma1_combine(edge_tensor(inst, *i, mid), edge_tensor(inst, mid, *j));
        if (omega.is_zero()) continue;
        const PairConstraint *pc = inst.find_pair(*i, *j);
        if (pc == nullptr || !is_in_span(omega.entries(), pc->covectors())) return false;
      }
  return true;
}

std::vector<Vec> product_assignment(const QSatInstance &inst) {
  if (!is_complete(inst)) throw ContractError("product_assignment: constraints are not a complete set");
  const std::size_t n = inst.num_qubits();
  std::vector<std::set<QubitId>> adj = inst.adjacency();
  std::vector<Vec> psi(n);
  std::vector<bool> assigned(n, false);

  // propagated neighbor state eps * phi^T * root
  auto propagate = [&](QubitId root, QubitId a, const Vec &root_state) {
    Mat phi = edge_tensor(inst, root, a);
    return mat_vec(epsilon(), mat_vec(phi.transpose(), root_state));
  };

  for (QubitId root = 0; root < n; ++root) {
    if (assigned[root]) continue;
    std::vector<QubitId> close;
    for (QubitId a : adj[root])
      if (!assigned[a]) close.push_back(a);

    // at most one bad projective direction per neighbor
    const auto &cands = root_candidates_prefix(close.size() + 2);
    bool placed = false;
    for (const Vec &cand : cands) {
      std::vector<Vec> states;
      bool ok = true;
      for (QubitId a : close) {
        Vec s = propagate(root, a, cand);
        if (is_zero(s)) {
          ok = false;
          break;
        }
        states.push_back(primitive(s));
      }
      if (!ok) continue;
      psi[root] = cand;
      assigned[root] = true;
      for (std::size_t k = 0; k < close.size(); ++k) {
        psi[close[k]] = std::move(states[k]);
        assigned[close[k]] = true;
      }
      placed = true;
      break;
    }
    if (!placed) throw std::logic_error("product_assignment: no admissible root state");
  }
  return psi;
}

// ---------------------------------------------------------------------------
// Driver

namespace {

/// Direct kernel computation for n <= 2.
std::optional<Vec> solve_small(const QSatInstance &inst) {
  const std::size_t n = inst.num_qubits();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Vec> rows;
  for (const auto &[key, pc] : inst.pairs())
    for (const auto &c : pc.covectors()) rows.push_back(c);
  for (const auto &[q, uc] : inst.units())
    for (const auto &u : uc.covectors()) {
      for (std::size_t s = 0; s < 2; ++s) {
        Vec e(2);
        e[s] = 1;
        rows.push_back(n == 1 ? u : (q == 0 ? kron(u, e) : kron(e, u)));
      }
    }
  if (rows.empty()) {
    Vec v(dim);
    v[0] = 1;
    return v;
  }
  std::vector<Vec> kernel = nullspace(Mat::from_rows(rows, dim));
  if (kernel.empty()) return std::nullopt;
  return primitive(kernel.front());
}

std::optional<QubitPair> lowest_pair_of_rank(const QSatInstance &inst, std::size_t r) {
  for (const auto &[key, pc] : inst.pairs())
    if (pc.rank() == r) return key;
  return std::nullopt;
}

}  // namespace

SolveResult solve(const QSatInstance &input) {
  SolveResult res;
  res.transcript.original_n = input.num_qubits();
  QSatInstance cur = input;

  auto absorb = [&](StepResult &&step) {
    for (auto &s : step.steps) res.transcript.steps.push_back(std::move(s));
    res.stats.qubit_reductions += cur.num_qubits() - step.instance.num_qubits();
    cur = std::move(step.instance);
    return !step.unsat;
  };

  FactorizedState reduced;
  while (true) {
    bool refuted = cur.max_pair_rank() >= 4;
    for (const auto &[q, uc] : cur.units()) refuted = refuted || uc.rank() >= 2;
    if (refuted) return res;

    if (cur.num_qubits() <= 2) {
      std::optional<Vec> v = solve_small(cur);
      if (!v) return res;
      reduced = FactorizedState(cur.num_qubits());
      if (cur.num_qubits() == 2) {
        if (auto f = factor_pair_state(*v)) {
          reduced.add_block({{0}, f->first});
          reduced.add_block({{1}, f->second});
        } else {
          reduced.add_block({{0, 1}, *v});
        }
      } else if (cur.num_qubits() == 1) {
        reduced.add_block({{0}, *v});
      }
      break;
    }
    if (auto p = lowest_pair_of_rank(cur, 3)) {
      if (!absorb(eliminate_rank3(cur, *p))) return res;
      continue;
    }
    if (auto p = lowest_pair_of_rank(cur, 2)) {
      absorb(merge_rank2(cur, *p));
      continue;
    }
    if (!cur.units().empty()) {
      if (!absorb(propagate_units(cur))) return res;
      continue;
    }
    ClosureResult closure = close_homogeneous(cur);
    ++res.stats.closure_rounds;
    res.stats.total_attempts += closure.attempts;
    double n3 = static_cast<double>(cur.num_qubits()) * cur.num_qubits() * cur.num_qubits();
    res.stats.max_attempts_per_n3 = std::max(res.stats.max_attempts_per_n3, closure.attempts / n3);
    cur = std::move(closure.instance);
    if (!closure.complete) continue;
    reduced = FactorizedState::product(product_assignment(cur));
    break;
  }

  res.state = reconstruct(res.transcript, reduced);
  res.status = res.state.is_product() ? SolveStatus::SatProduct : SolveStatus::SatState;
  return res;
}

FactorizedState reconstruct(const ReductionTranscript &transcript, const FactorizedState &reduced) {
  if (reduced.num_qubits() != transcript.final_n())
    throw ContractError("reconstruct: state has " + std::to_string(reduced.num_qubits()) +
                        " qubits but the transcript ends with " + std::to_string(transcript.final_n()));
  FactorizedState st = reduced;
  for (auto it = transcript.steps.rbegin(); it != transcript.steps.rend(); ++it) {
    if (const auto *r = std::get_if<Relabel>(&*it)) {
      std::vector<QubitId> inverse(r->new_size());
      for (QubitId old = 0; old < r->map.size(); ++old)
        if (r->map[old]) inverse[*r->map[old]] = old;
      for (auto &b : st.blocks())
        for (auto &q : b.qubits) q = inverse.at(q);
      st.set_num_qubits(r->map.size());
    } else if (const auto *u = std::get_if<UnitFix>(&*it)) {
      st.add_block({{u->qubit}, u->state});
    } else if (const auto *e = std::get_if<Rank3Eliminate>(&*it)) {
      if (auto f = factor_pair_state(e->kept_state)) {
        st.add_block({{e->pair.lo}, f->first});
        st.add_block({{e->pair.hi}, f->second});
      } else {
        st.add_block({{e->pair.lo, e->pair.hi}, e->kept_state});
      }
    } else if (const auto *m = std::get_if<Rank2Merge>(&*it)) {
      auto &blocks = st.blocks();
      auto owner = std::find_if(blocks.begin(), blocks.end(), [&](const StateBlock &b) {
        return std::find(b.qubits.begin(), b.qubits.end(), m->logical) != b.qubits.end();
      });
      if (owner == blocks.end()) throw ContractError("reconstruct: merged qubit missing from state");
      if (owner->qubits.size() == 1) {
        const Vec &s = owner->amplitudes;
        Vec pair_state(4);
        for (std::size_t g = 0; g < 2; ++g)
          for (std::size_t k = 0; k < 4; ++k) fused_add_mul(pair_state[k], s[g], m->basis[g][k]);
        blocks.erase(owner);
        if (auto f = factor_pair_state(pair_state)) {
          st.add_block({{m->pair.lo}, f->first});
          st.add_block({{m->pair.hi}, f->second});
        } else {
          st.add_block({{m->pair.lo, m->pair.hi}, primitive(pair_state)});
        }
        continue;
      }
      // expand the logical qubit in place, inserting pair.hi right after it
      const std::size_t w = owner->qubits.size();
      const std::size_t pos =
          static_cast<std::size_t>(std::find(owner->qubits.begin(), owner->qubits.end(), m->logical) -
                                   owner->qubits.begin());
      std::vector<QubitId> qubits = owner->qubits;
      qubits.insert(qubits.begin() + static_cast<std::ptrdiff_t>(pos) + 1, m->pair.hi);
      Vec amps(std::size_t{1} << (w + 1));
      const std::size_t low_bits = w - 1 - pos;  // bits below the logical qubit
      for (std::size_t i = 0; i < owner->amplitudes.size(); ++i) {
        const Scalar &a = owner->amplitudes[i];
        if (a.is_zero()) continue;
        std::size_t g = (i >> low_bits) & 1U;
        std::size_t high = i >> (low_bits + 1);
        std::size_t low = i & ((std::size_t{1} << low_bits) - 1);
        for (std::size_t k = 0; k < 4; ++k) {
          std::size_t j = (((high << 2) | k) << low_bits) | low;
          fused_add_mul(amps[j], a, m->basis[g][k]);
        }
      }
      owner->qubits = std::move(qubits);
      owner->amplitudes = std::move(amps);
    }
  }
  return st;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

/// Every contraction of the covector (over `support`, first = most
/// significant) with the block state vanishes.
bool block_annihilated(const StateBlock &block, const std::vector<QubitId> &support, const Vec &covector) {
  const std::size_t w = block.qubits.size();
  std::vector<std::size_t> shift;
  std::size_t support_mask = 0;
  for (QubitId q : support) {
    auto it = std::find(block.qubits.begin(), block.qubits.end(), q);
    std::size_t s = w - 1 - static_cast<std::size_t>(it - block.qubits.begin());
    shift.push_back(s);
    support_mask |= std::size_t{1} << s;
  }
  for (std::size_t base = 0; base < block.amplitudes.size(); ++base) {
    if (base & support_mask) continue;
    Scalar acc;
    for (std::size_t local = 0; local < covector.size(); ++local) {
      std::size_t idx = base;
      for (std::size_t p = 0; p < support.size(); ++p)
        if ((local >> (support.size() - 1 - p)) & 1U) idx |= std::size_t{1} << shift[p];
      fused_add_mul(acc, covector[local], block.amplitudes[idx]);
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

}  // namespace

bool verify_factorized(const QSatInstance &inst, const FactorizedState &state) {
  if (state.num_qubits() != inst.num_qubits()) throw ShapeError("state and instance qubit counts differ");
  std::vector<std::size_t> owner(state.num_qubits(), SIZE_MAX);
  const auto &blocks = state.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto &b = blocks[i];
    if (b.amplitudes.size() != (std::size_t{1} << b.qubits.size())) throw ShapeError("block amplitude size mismatch");
    if (is_zero(b.amplitudes)) throw ContractError("state is zero");
    for (QubitId q : b.qubits) {
      if (q >= owner.size() || owner[q] != SIZE_MAX) throw ContractError("blocks do not partition the qubits");
      owner[q] = i;
    }
  }
  if (std::find(owner.begin(), owner.end(), SIZE_MAX) != owner.end())
    throw ContractError("blocks do not cover every qubit");

  auto joint = [&](QubitId a, QubitId b) {
    const StateBlock &x = blocks[owner[a]];
    if (owner[a] == owner[b]) return x;
    const StateBlock &y = blocks[owner[b]];
    if (x.qubits.size() + y.qubits.size() > 24) throw LimitError("entangled blocks too large to verify");
    StateBlock both{x.qubits, kron(x.amplitudes, y.amplitudes)};
    both.qubits.insert(both.qubits.end(), y.qubits.begin(), y.qubits.end());
    return both;
  };
  for (const auto &[key, pc] : inst.pairs()) {
    StateBlock block = joint(key.lo, key.hi);
    for (const auto &c : pc.covectors())
      if (!block_annihilated(block, {key.lo, key.hi}, c)) return false;
  }
  for (const auto &[q, uc] : inst.units())
    for (const auto &u : uc.covectors())
      if (!block_annihilated(blocks[owner[q]], {q}, u)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// JSON

json transcript_to_json(const ReductionTranscript &transcript) {
  json steps = json::array();
  for (const auto &step : transcript.steps) {
    if (const auto *e = std::get_if<Rank3Eliminate>(&step)) {
      steps.push_back(
          {{"kind", "rank3_eliminate"}, {"pair", {e->pair.lo, e->pair.hi}}, {"kept_state", vec_to_json(e->kept_state)}});
    } else if (const auto *m = std::get_if<Rank2Merge>(&step)) {
      steps.push_back({{"kind", "rank2_merge"},
                       {"pair", {m->pair.lo, m->pair.hi}},
                       {"logical", m->logical},
                       {"basis", {vec_to_json(m->basis[0]), vec_to_json(m->basis[1])}}});
    } else if (const auto *u = std::get_if<UnitFix>(&step)) {
      steps.push_back({{"kind", "unit_fix"}, {"qubit", u->qubit}, {"state", vec_to_json(u->state)}});
    } else if (const auto *r = std::get_if<Relabel>(&step)) {
      json map = json::array();
      for (const auto &m : r->map) map.push_back(m ? json(*m) : json(nullptr));
      steps.push_back({{"kind", "relabel"}, {"map", map}});
    }
  }
  return {{"original_n", transcript.original_n}, {"steps", steps}};
}

json result_to_json(const SolveResult &result) {
  if (!result.satisfiable()) return {{"status", "unsat"}};
  if (result.status == SolveStatus::SatProduct) {
    json data = json::array();
    for (const auto &s : result.state.product_states()) data.push_back(vec_to_json(s));
    return {{"status", "sat"}, {"form", "product"}, {"data", data}};
  }
  json blocks = json::array();
  for (const auto &b : result.state.blocks())
    blocks.push_back({{"qubits", b.qubits}, {"amplitudes", vec_to_json(b.amplitudes)}});
  return {{"status", "sat"}, {"form", "state"}, {"data", {{"n", result.state.num_qubits()}, {"blocks", blocks}}}};
}

FactorizedState state_from_json(const json &j, std::size_t n) {
  if (j.is_object() && j.contains("status")) {
    if (j["status"] != "sat") throw ParseError("state file: result is not satisfiable");
    const json &data = j.at("data");
    if (j.value("form", "") == "product") {
      std::vector<Vec> states;
      for (std::size_t q = 0; q < data.size(); ++q) {
        Vec s = vec_from_json(data[q], "data[" + std::to_string(q) + "]");
        if (s.size() != 2) throw ParseError("data[" + std::to_string(q) + "]: expected a 2-vector");
        states.push_back(std::move(s));
      }
      if (states.size() != n) throw ParseError("state file: qubit count does not match the instance");
      return FactorizedState::product(states);
    }
    return state_from_json(data, n);
  }
  if (j.is_object() && j.contains("blocks")) {
    FactorizedState st(n);
    const json &blocks = j["blocks"];
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      std::string where = "blocks[" + std::to_string(i) + "]";
      StateBlock b;
      for (const auto &q : blocks[i].at("qubits")) b.qubits.push_back(q.get<QubitId>());
      b.amplitudes = vec_from_json(blocks[i].at("amplitudes"), where + ".amplitudes");
      st.add_block(std::move(b));
    }
    return st;
  }
  const json &amps = (j.is_object() && j.contains("amplitudes")) ? j["amplitudes"] : j;
  Vec v = vec_from_json(amps, "amplitudes");
  if (n >= 63 || v.size() != (std::size_t{1} << n)) throw ParseError("state file: amplitude count is not 2^n");
  FactorizedState st(n);
  std::vector<QubitId> all(n);
  for (QubitId q = 0; q < n; ++q) all[q] = q;
  st.add_block({all, v});
  return st;
}

}  // namespace qsat
