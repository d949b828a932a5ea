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

#include "qsat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

namespace qsat::oracle {

namespace {

using cplx = std::complex<double>;

/// Index bookkeeping for one term: where each local basis state lands in the
/// global index, and which bits the spectator qubits occupy.
struct Embedding {
  std::uint64_t support_mask = 0;
  std::uint64_t full_mask = 0;
  std::vector<std::uint64_t> offset;  // local index -> global bits

  Embedding(std::size_t n, const std::vector<QubitId> &support) {
    const std::size_t w = support.size();
    full_mask = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    for (QubitId q : support) support_mask |= std::uint64_t{1} << (n - 1 - q);
    offset.assign(std::size_t{1} << w, 0);
    for (std::size_t x = 0; x < offset.size(); ++x)
      for (std::size_t p = 0; p < w; ++p)
        if ((x >> (w - 1 - p)) & 1U) offset[x] |= std::uint64_t{1} << (n - 1 - support[p]);
  }

  template <typename F>
  void for_each_spectator(F &&f) const {
    const std::uint64_t free = full_mask & ~support_mask;
    std::uint64_t s = 0;
    do {
      f(s);
      s = ((s | ~free) + 1) & free;
    } while (s != 0);
  }
};

void check_exact_limit(std::size_t n, std::size_t limit) {
  if (n > limit)
    throw LimitError("exact oracle limited to " + std::to_string(limit) + " qubits (instance has " +
                     std::to_string(n) + "); use float mode");
}

void check_psi(std::size_t n, const Vec &psi) {
  if (n >= 63 || psi.size() != (std::size_t{1} << n)) throw ShapeError("state vector has wrong dimension");
  if (is_zero(psi)) throw ContractError("state vector is zero");
}

SparseRow axpy(const SparseRow &row, const Scalar &factor, const SparseRow &pivot) {
  // row - factor * pivot
  SparseRow out;
  out.reserve(row.size() + pivot.size());
  auto a = row.begin();
  auto b = pivot.begin();
  while (a != row.end() || b != pivot.end()) {
    if (b == pivot.end() || (a != row.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == row.end() || b->first < a->first) {
      out.emplace_back(b->first, -(factor * b->second));
      ++b;
    } else {
      Scalar v = a->second;
      fused_add_mul(v, -factor, b->second);
      if (!v.is_zero()) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  return out;
}

cplx to_cplx(const Scalar &s) { return {s.re().get_d(), s.im().get_d()}; }

}  // namespace

// ---------------------------------------------------------------------------
// SparseEchelon

bool SparseEchelon::insert(SparseRow row) {
  while (!row.empty()) {
    auto it = rows_.find(row.front().first);
    if (it == rows_.end()) {
      Scalar inv = Scalar(1) / row.front().second;
      for (auto &[c, v] : row) v *= inv;
      std::uint32_t pivot = row.front().first;
      rows_.emplace(pivot, std::move(row));
      return true;
    }
    Scalar factor = row.front().second;
    row = axpy(row, factor, it->second);
  }
  return false;
}

std::vector<Vec> SparseEchelon::kernel() const {
  std::vector<bool> is_pivot(dim_, false);
  for (const auto &[p, r] : rows_) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < dim_; ++f) {
    if (is_pivot[f]) continue;
    Vec x(dim_);
    x[f] = 1;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      Scalar acc;
      for (std::size_t k = 1; k < it->second.size(); ++k) {
        const auto &[c, v] = it->second[k];
        fused_add_mul(acc, v, x[c]);
      }
      x[it->first] = -acc;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Exact mode

void for_each_constraint_row(const KSatInstance &inst, const std::function<bool(SparseRow &&)> &sink) {
  const std::size_t n = inst.num_qubits();
  for (const auto &term : inst.terms()) {
    Embedding emb(n, term.support);
    for (const auto &ket : term.span) {
      Vec co = conj(ket);
      std::vector<std::size_t> nz;
      for (std::size_t x = 0; x < co.size(); ++x)
        if (!co[x].is_zero()) nz.push_back(x);
      // offsets grow with the local index, so rows come out sorted
      bool keep_going = true;
      emb.for_each_spectator([&](std::uint64_t s) {
        if (!keep_going) return;
        SparseRow row;
        row.reserve(nz.size());
        for (std::size_t x : nz) row.emplace_back(static_cast<std::uint32_t>(s | emb.offset[x]), co[x]);
        keep_going = sink(std::move(row));
      });
      if (!keep_going) return;
    }
  }
}

namespace {

SparseEchelon eliminate(const KSatInstance &inst, std::size_t limit, bool stop_when_full) {
  check_exact_limit(inst.num_qubits(), limit);
  SparseEchelon ech(std::size_t{1} << inst.num_qubits());
  for_each_constraint_row(inst, [&](SparseRow &&row) {
    ech.insert(std::move(row));
    return !(stop_when_full && ech.full());
  });
  return ech;
}

}  // namespace

Decision brute_satisfiable(const KSatInstance &inst, std::size_t limit) {
  SparseEchelon ech = eliminate(inst, limit, true);
  std::size_t nullity = ech.dim() - ech.rank();
  return {nullity > 0, nullity};
}

Decision brute_satisfiable(const QSatInstance &inst, std::size_t limit) {
  return brute_satisfiable(to_ksat(inst), limit);
}

std::vector<Vec> allowed_basis(const KSatInstance &inst, std::size_t limit) {
  return eliminate(inst, limit, false).kernel();
}

std::vector<Vec> allowed_basis(const QSatInstance &inst, std::size_t limit) {
  return allowed_basis(to_ksat(inst), limit);
}

bool verify_state(const KSatInstance &inst, const Vec &psi) {
  const std::size_t n = inst.num_qubits();
  check_psi(n, psi);
  for (const auto &term : inst.terms()) {
    Embedding emb(n, term.support);
    std::vector<Vec> covectors;
    for (const auto &ket : term.span) covectors.push_back(conj(ket));
    bool ok = true;
    emb.for_each_spectator([&](std::uint64_t s) {
      if (!ok) return;
      for (const auto &co : covectors) {
        Scalar acc;
        for (std::size_t x = 0; x < co.size(); ++x) fused_add_mul(acc, co[x], psi[s | emb.offset[x]]);
        if (!acc.is_zero()) {
          ok = false;
          return;
        }
      }
    });
    if (!ok) return false;
  }
  return true;
}

bool verify_state(const QSatInstance &inst, const Vec &psi) { return verify_state(to_ksat(inst), psi); }

Rational energy(const KSatInstance &inst, const Vec &psi) {
  const std::size_t n = inst.num_qubits();
  check_psi(n, psi);
  Scalar total;
  for (const auto &term : inst.terms()) {
    Mat proj = projector_from_span(term.span);
    Embedding emb(n, term.support);
    const std::size_t d = proj.rows();
    Vec slice(d);
    emb.for_each_spectator([&](std::uint64_t s) {
      for (std::size_t x = 0; x < d; ++x) slice[x] = psi[s | emb.offset[x]];
      if (is_zero(slice)) return;
      Vec p_slice = mat_vec(proj, slice);
      total += inner(slice, p_slice);
    });
  }
  if (!total.is_real()) throw ContractError("energy: non-real quadratic form (projector not Hermitian)");
  return total.re() / inner(psi, psi).re();
}

Rational energy(const QSatInstance &inst, const Vec &psi) { return energy(to_ksat(inst), psi); }

// ---------------------------------------------------------------------------
// Float mode

namespace {

struct FloatTerm {
  Embedding emb;
  Eigen::MatrixXcd proj;
};

std::vector<FloatTerm> float_terms(const KSatInstance &inst) {
  std::vector<FloatTerm> out;
  for (const auto &term : inst.terms()) {
    Mat p = projector_from_span(term.span);
    Eigen::MatrixXcd m(p.rows(), p.cols());
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < p.cols(); ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_cplx(p(i, j));
    out.push_back({Embedding(inst.num_qubits(), term.support), std::move(m)});
  }
  return out;
}

void apply_h(const std::vector<FloatTerm> &terms, const Eigen::VectorXcd &x, Eigen::VectorXcd &y) {
  y.setZero();
  for (const auto &t : terms) {
    const auto d = t.proj.rows();
    Eigen::VectorXcd slice(d);
    t.emb.for_each_spectator([&](std::uint64_t s) {
      for (Eigen::Index k = 0; k < d; ++k) slice(k) = x(static_cast<Eigen::Index>(s | t.emb.offset[k]));
      Eigen::VectorXcd out = t.proj * slice;
      for (Eigen::Index k = 0; k < d; ++k) y(static_cast<Eigen::Index>(s | t.emb.offset[k])) += out(k);
    });
  }
}

double dense_min_eigenvalue(const std::vector<FloatTerm> &terms, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  for (const auto &t : terms) {
    const auto w = t.proj.rows();
    t.emb.for_each_spectator([&](std::uint64_t s) {
      for (Eigen::Index a = 0; a < w; ++a)
        for (Eigen::Index b = 0; b < w; ++b)
          h(static_cast<Eigen::Index>(s | t.emb.offset[a]), static_cast<Eigen::Index>(s | t.emb.offset[b])) +=
              t.proj(a, b);
    });
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Restarted Lanczos for the lowest eigenpair. Each cycle runs `steps`
// three-term iterations, rebuilds the lowest Ritz vector, and restarts from it.
double lanczos_min_eigenvalue(const std::vector<FloatTerm> &terms, std::size_t dim, double tol) {
  const auto d = static_cast<Eigen::Index>(dim);
  const Eigen::Index steps = std::min<Eigen::Index>(d, 80);
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd start(d);
  for (Eigen::Index i = 0; i < d; ++i) start(i) = cplx(gauss(rng), gauss(rng));
  start.normalize();

  Eigen::VectorXcd hx(d);
  double theta = 0.0;
  for (int cycle = 0; cycle < 200; ++cycle) {
    std::vector<double> alpha;
    std::vector<double> beta;
    Eigen::VectorXcd q = start;
    Eigen::VectorXcd q_prev = Eigen::VectorXcd::Zero(d);
    double b_prev = 0.0;
    for (Eigen::Index j = 0; j < steps; ++j) {
      apply_h(terms, q, hx);
      double a = hx.dot(q).real();
      alpha.push_back(a);
      Eigen::VectorXcd r = hx - a * q - b_prev * q_prev;
      double b = r.norm();
      if (j + 1 == steps || b < 1e-12) break;
      beta.push_back(b);
      q_prev = q;
      q = r / b;
      b_prev = b;
    }
    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    theta = es.eigenvalues()(0);
    Eigen::VectorXd s = es.eigenvectors().col(0);

    // second pass: rebuild the Ritz vector from the same recurrence
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(d);
    q = start;
    q_prev.setZero();
    b_prev = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      y += s(j) * q;
      if (j + 1 == m) break;
      apply_h(terms, q, hx);
      Eigen::VectorXcd r = hx - alpha[static_cast<std::size_t>(j)] * q - b_prev * q_prev;
      q_prev = q;
      b_prev = beta[static_cast<std::size_t>(j)];
      q = r / b_prev;
    }
    y.normalize();
    apply_h(terms, y, hx);
    theta = hx.dot(y).real();
    double residual = (hx - theta * y).norm();
    if (residual <= tol) return theta;
    start = y;
  }
  return theta;
}

}  // namespace

double min_eigenvalue_float(const KSatInstance &inst, const FloatOptions &opts) {
  const std::size_t n = inst.num_qubits();
  if (n > opts.max_qubits)
    throw LimitError("float oracle limited to " + std::to_string(opts.max_qubits) + " qubits (instance has " +
                     std::to_string(n) + ")");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<FloatTerm> terms = float_terms(inst);
  if (dim <= opts.dense_limit) return dense_min_eigenvalue(terms, dim);
  return lanczos_min_eigenvalue(terms, dim, opts.residual_tol);
}

}  // namespace qsat::oracle
