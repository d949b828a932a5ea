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

#include "qsat/exactfield.hpp"

#include <algorithm>
#include <cctype>

namespace qsat {

namespace {

bool is_decimal_integer(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_decimal_integer(num, true) || !is_decimal_integer(den, false)) {
    throw ParseError("malformed rational \"" + std::string(text) + "\"");
  }
  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational &value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Scalar &Scalar::operator*=(const Scalar &o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_.swap(re);
  im_.swap(im);
  return *this;
}

Scalar &Scalar::operator/=(const Scalar &o) {
  if (o.is_zero()) throw std::domain_error("Scalar division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational d = o.norm2();
  Rational re = (re_ * o.re_ + im_ * o.im_) / d;
  Rational im = (im_ * o.re_ - re_ * o.im_) / d;
  re_.swap(re);
  im_.swap(im);
  return *this;
}

std::string Scalar::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + "i";
  return "(" + re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im_.get_str() + "i)";
}

void fused_add_mul(Scalar &acc, const Scalar &a, const Scalar &b) {
  if (a.is_zero() || b.is_zero()) return;
  bool a_real = sgn(a.im_) == 0;
  bool b_real = sgn(b.im_) == 0;
  if (a_real && b_real) {
    acc.re_ += a.re_ * b.re_;
  } else if (a_real) {
    acc.re_ += a.re_ * b.re_;
    acc.im_ += a.re_ * b.im_;
  } else if (b_real) {
    acc.re_ += a.re_ * b.re_;
    acc.im_ += a.im_ * b.re_;
  } else {
    acc.re_ += a.re_ * b.re_;
    acc.re_ -= a.im_ * b.im_;
    acc.im_ += a.re_ * b.im_;
    acc.im_ += a.im_ * b.re_;
  }
}

// ---------------------------------------------------------------------------
// Mat

Mat::Mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto &r : rows) {
    if (r.size() != cols_) throw ShapeError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(std::span<const Vec> rows, std::size_t cols) {
  Mat m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ShapeError("row length mismatch");
    std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  return m;
}

Mat Mat::from_columns(std::span<const Vec> cols, std::size_t rows) {
  Mat m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw ShapeError("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Mat Mat::reshape(const Vec &v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw ShapeError("reshape size mismatch");
  Mat m(rows, cols);
  m.data_ = v;
  return m;
}

Vec Mat::row(std::size_t r) const {
  auto first = data_.begin() + static_cast<std::ptrdiff_t>(r * cols_);
  return Vec(first, first + static_cast<std::ptrdiff_t>(cols_));
}

Vec Mat::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

bool Mat::is_zero() const { return qsat::is_zero(data_); }

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Mat Mat::adjoint() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c).conj();
  return t;
}

Mat Mat::conj() const {
  Mat m = *this;
  for (auto &x : m.data_) x = x.conj();
  return m;
}

Mat mat_mul(const Mat &a, const Mat &b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Mat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar &aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) fused_add_mul(c(i, j), aik, b(k, j));
    }
  return c;
}

Mat operator+(const Mat &a, const Mat &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix sum shape mismatch");
  Mat c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

Mat operator-(const Mat &a, const Mat &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix difference shape mismatch");
  Mat c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

Mat operator*(const Scalar &s, const Mat &m) {
  Mat c = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) *= s;
  return c;
}

Vec mat_vec(const Mat &m, const Vec &v) {
  if (m.cols() != v.size()) throw ShapeError("mat_vec shape mismatch");
  Vec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) fused_add_mul(out[i], m(i, j), v[j]);
  return out;
}

Mat kron(const Mat &a, const Mat &b) {
  Mat c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return c;
}

const Mat &epsilon() {
  static const Mat eps{{0, 1}, {-1, 0}};
  return eps;
}

// ---------------------------------------------------------------------------
// Vectors

Scalar dot(const Vec &a, const Vec &b) {
  if (a.size() != b.size()) throw ShapeError("dot length mismatch");
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i) fused_add_mul(s, a[i], b[i]);
  return s;
}

Scalar inner(const Vec &a, const Vec &b) {
  if (a.size() != b.size()) throw ShapeError("inner length mismatch");
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i) fused_add_mul(s, a[i].conj(), b[i]);
  return s;
}

Vec conj(const Vec &v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].conj();
  return out;
}

Vec scaled(const Vec &v, const Scalar &s) {
  Vec out = v;
  for (auto &x : out) x *= s;
  return out;
}

Vec operator+(const Vec &a, const Vec &b) {
  if (a.size() != b.size()) throw ShapeError("vector sum: length mismatch");
  Vec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Vec operator-(const Vec &a, const Vec &b) {
  if (a.size() != b.size()) throw ShapeError("vector difference: length mismatch");
  Vec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

bool is_zero(const Vec &v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar &x) { return x.is_zero(); });
}

Vec kron(const Vec &a, const Vec &b) {
  Vec out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

Vec primitive(const Vec &v) {
  mpz_class lcm_den = 1;
  mpz_class gcd_num = 0;
  for (const auto &x : v) {
    for (const Rational *part : {&x.re(), &x.im()}) {
      if (sgn(*part) == 0) continue;
      mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), part->get_den_mpz_t());
      mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), part->get_num_mpz_t());
    }
  }
  if (gcd_num == 0) return v;
  Rational factor(lcm_den, gcd_num);
  factor.canonicalize();
  if (factor == 1) return v;
  return scaled(v, Scalar(factor));
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

// In-place reduced row echelon form. Returns pivot columns in row order.
std::vector<std::size_t> rref(Mat &m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Scalar inv = Scalar(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      Scalar f = -m(r, col);
      for (std::size_t j = col; j < m.cols(); ++j) fused_add_mul(m(r, j), f, m(row, j));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Mat &m) {
  EchelonBasis basis(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
  return basis.rank();
}

std::size_t rank(std::span<const Vec> vectors) {
  if (vectors.empty()) return 0;
  EchelonBasis basis(vectors.front().size());
  for (const auto &v : vectors) basis.insert(v);
  return basis.rank();
}

std::vector<Vec> nullspace(const Mat &m) {
  Mat r = m;
  std::vector<std::size_t> pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool is_in_span(const Vec &v, std::span<const Vec> spanning) {
  if (is_zero(v)) return true;
  EchelonBasis basis(v.size());
  for (const auto &s : spanning) {
    if (s.size() != v.size()) throw ShapeError("is_in_span dimension mismatch");
    basis.insert(s);
  }
  return basis.contains(v);
}

std::vector<Vec> independent_subset(std::span<const Vec> vectors) {
  std::vector<Vec> out;
  if (vectors.empty()) return out;
  EchelonBasis basis(vectors.front().size());
  for (const auto &v : vectors)
    if (basis.insert(v)) out.push_back(v);
  return out;
}

Mat projector_from_span(std::span<const Vec> spanning) {
  if (spanning.empty()) throw ContractError("projector_from_span: empty spanning set");
  std::size_t dim = spanning.front().size();
  std::vector<Vec> ortho;
  std::vector<Rational> norms;
  for (const auto &v : spanning) {
    if (v.size() != dim) throw ShapeError("projector_from_span dimension mismatch");
    Vec w = v;
    for (std::size_t k = 0; k < ortho.size(); ++k) {
      Scalar c = inner(ortho[k], w) / Scalar(norms[k]);
      if (c.is_zero()) continue;
      Scalar neg = -c;
      for (std::size_t i = 0; i < dim; ++i) fused_add_mul(w[i], neg, ortho[k][i]);
    }
    if (is_zero(w)) continue;
    Rational n2 = inner(w, w).re();
    ortho.push_back(std::move(w));
    norms.push_back(std::move(n2));
  }
  if (ortho.empty()) throw ContractError("projector_from_span: spanning set is all zero");
  Mat p(dim, dim);
  for (std::size_t k = 0; k < ortho.size(); ++k) {
    Scalar inv(Rational(1) / norms[k]);
    for (std::size_t i = 0; i < dim; ++i) {
      if (ortho[k][i].is_zero()) continue;
      Scalar wi = ortho[k][i] * inv;
      for (std::size_t j = 0; j < dim; ++j) fused_add_mul(p(i, j), wi, ortho[k][j].conj());
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// EchelonBasis

Vec EchelonBasis::reduce(Vec v) const {
  if (v.size() != dim_) throw ShapeError("EchelonBasis: vector dimension mismatch");
  for (const auto &[pivot, row] : rows_) {
    if (v[pivot].is_zero()) continue;
    Scalar f = -v[pivot];
    for (std::size_t j = pivot; j < dim_; ++j) fused_add_mul(v[j], f, row[j]);
  }
  return v;
}

bool EchelonBasis::insert(const Vec &v) {
  Vec r = reduce(v);
  auto lead = std::find_if(r.begin(), r.end(), [](const Scalar &x) { return !x.is_zero(); });
  if (lead == r.end()) return false;
  std::size_t pivot = static_cast<std::size_t>(lead - r.begin());
  Scalar inv = Scalar(1) / r[pivot];
  for (std::size_t j = pivot; j < dim_; ++j) r[j] *= inv;
  // Keep the basis in reduced form.
  for (auto &[p, row] : rows_) {
    if (row[pivot].is_zero()) continue;
    Scalar f = -row[pivot];
    for (std::size_t j = pivot; j < dim_; ++j) fused_add_mul(row[j], f, r[j]);
  }
  auto pos = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                              [](const auto &entry, std::size_t p) { return entry.first < p; });
  rows_.insert(pos, {pivot, std::move(r)});
  return true;
}

}  // namespace qsat
