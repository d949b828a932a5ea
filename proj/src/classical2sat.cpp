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

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

namespace qsat {

bool Cnf2::add_clause(Literal a, Literal b) {
  if (a.var >= n_ || b.var >= n_) throw ContractError("clause variable out of range");
  if (a == ~b) return false;
  clauses_.emplace_back(a, b);
  return true;
}

bool Cnf2::satisfied_by(const std::vector<bool> &x) const {
  if (x.size() != n_) throw ShapeError("assignment length does not match the variable count");
  return std::all_of(clauses_.begin(), clauses_.end(),
                     [&](const Clause2 &c) { return c.first.holds(x) || c.second.holds(x); });
}

namespace {

long parse_long(std::string_view tok, std::size_t line) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line) + ": expected an integer, got '" + std::string(tok) + "'");
  return v;
}

}  // namespace

Cnf2 parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<Cnf2> f;
  std::size_t declared = 0;
  std::size_t seen = 0;
  std::vector<long> pending;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c") continue;
    if (tok == "%") break;
    if (tok == "p") {
      std::string fmt, n, m;
      if (f || !(ls >> fmt >> n >> m) || fmt != "cnf")
        throw ParseError("line " + std::to_string(lineno) + ": malformed problem line");
      long nv = parse_long(n, lineno);
      long mv = parse_long(m, lineno);
      if (nv < 0 || mv < 0 || nv > std::numeric_limits<std::int32_t>::max())
        throw ParseError("line " + std::to_string(lineno) + ": bad problem size");
      f.emplace(static_cast<std::size_t>(nv));
      declared = static_cast<std::size_t>(mv);
      continue;
    }
    if (!f) throw ParseError("line " + std::to_string(lineno) + ": clause before the problem line");
    do {
      long lit = parse_long(tok, lineno);
      if (lit != 0) {
        if (static_cast<std::size_t>(std::labs(lit)) > f->num_vars())
          throw ParseError("line " + std::to_string(lineno) + ": variable " + std::to_string(std::labs(lit)) +
                           " exceeds the declared count");
        pending.push_back(lit);
        continue;
      }
      if (pending.size() != 2)
        throw ParseError("line " + std::to_string(lineno) + ": clause has " + std::to_string(pending.size()) +
                         " literals, only 2-literal clauses are supported");
      auto to_lit = [](long l) { return Literal{static_cast<std::uint32_t>(std::labs(l) - 1), l < 0}; };
      f->add_clause(to_lit(pending[0]), to_lit(pending[1]));
      pending.clear();
      ++seen;
    } while (ls >> tok);
  }
  if (!f) throw ParseError("missing 'p cnf' problem line");
  if (!pending.empty()) throw ParseError("last clause is not terminated by 0");
  if (seen != declared)
    throw ParseError("problem line declares " + std::to_string(declared) + " clauses but " + std::to_string(seen) +
                     " were given");
  return *f;
}

ImplicationGraph::ImplicationGraph(const Cnf2 &f) {
  const std::size_t nv = 2 * f.num_vars();
  offsets_.assign(nv + 1, 0);
  auto for_each_edge = [&](auto &&emit) {
    for (const auto &[p, q] : f.clauses()) {
      emit(p.vertex(), (~q).vertex());
      emit(q.vertex(), (~p).vertex());
    }
  };
  for_each_edge([&](std::uint32_t from, std::uint32_t) { ++offsets_[from + 1]; });
  for (std::size_t v = 0; v < nv; ++v) offsets_[v + 1] += offsets_[v];
  targets_.resize(offsets_.back());
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for_each_edge([&](std::uint32_t from, std::uint32_t to) { targets_[fill[from]++] = to; });
}

bool ImplicationGraph::has_edge(std::uint32_t from, std::uint32_t to) const {
  auto s = successors(from);
  return std::find(s.begin(), s.end(), to) != s.end();
}

SccResult strongly_connected_components(const ImplicationGraph &g) {
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  const std::size_t nv = g.num_vertices();
  SccResult res;
  res.component.assign(nv, kUnvisited);
  std::vector<std::uint32_t> index(nv, kUnvisited), low(nv, 0);
  std::vector<std::uint32_t> stack;
  std::vector<bool> on_stack(nv, false);
  // (vertex, next successor offset)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> call;
  std::uint32_t counter = 0;

  for (std::uint32_t root = 0; root < nv; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto &[v, pos] = call.back();
      if (pos == 0 && index[v] == kUnvisited) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        ++res.work;
      }
      auto succ = g.successors(v);
      if (pos < succ.size()) {
        std::uint32_t w = succ[pos++];
        ++res.work;
        if (index[w] == kUnvisited) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      std::uint32_t done = v;
      call.pop_back();
      if (low[done] == index[done]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          res.component[w] = static_cast<std::uint32_t>(res.count);
        } while (w != done);
        ++res.count;
      }
      if (!call.empty()) {
        std::uint32_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return res;
}

ClassicalResult solve_classical(const Cnf2 &f) {
  ImplicationGraph g(f);
  SccResult scc = strongly_connected_components(g);
  ClassicalResult res;
  res.work = scc.work;
  std::vector<bool> x(f.num_vars());
  for (std::uint32_t v = 0; v < f.num_vars(); ++v) {
    std::uint32_t pos = scc.component[2 * v];
    std::uint32_t neg = scc.component[2 * v + 1];
    if (pos == neg) return res;
    // larger Tarjan number = earlier in topological order; a path from x to
    // ~x means x = 0 forces x = 1
    x[v] = pos > neg;
  }
  res.assignment = std::move(x);
  return res;
}

bool brute_classical(const Cnf2 &f) {
  const std::size_t n = f.num_vars();
  if (n > 30) throw LimitError("enumeration limited to 30 variables");
  std::vector<bool> x(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t v = 0; v < n; ++v) x[v] = (mask >> v) & 1U;
    if (f.satisfied_by(x)) return true;
  }
  return false;
}

QSatInstance embed_classical(const Cnf2 &f) {
  QSatInstance inst(f.num_vars());
  for (const auto &[p, q] : f.clauses()) {
    // the clause fails only when both literals are false
    std::size_t bad_p = p.negated ? 1 : 0;
    std::size_t bad_q = q.negated ? 1 : 0;
    if (p.var == q.var) {
      Vec u(2);
      u[bad_p] = 1;
      inst.insert_unit(p.var, u);
      continue;
    }
    Mat t(2, 2);
    t(bad_p, bad_q) = 1;
    inst.insert_tensor(p.var, q.var, t);
  }
  return inst;
}

std::string assignment_string(const std::vector<bool> &x) {
  std::string s;
  s.reserve(x.size());
  for (bool b : x) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace qsat
