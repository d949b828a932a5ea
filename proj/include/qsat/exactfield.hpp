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

#ifndef QSAT_EXACTFIELD_HPP
#define QSAT_EXACTFIELD_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qsat {

/// Raised when matrix or vector dimensions do not line up.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation's precondition does not hold.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Raised by the text and JSON readers. The message carries the location.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an input exceeds a configured size limit.
struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Rational = mpq_class;

/// Parses "p/q" or "p" (decimal, optional leading minus, q > 0).
Rational parse_rational(std::string_view text);

/// Always renders as "p/q" with q > 0 and gcd(p, q) = 1.
std::string format_rational(const Rational &value);

/// A Gaussian rational: re + i*im with both parts in canonical reduced form.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  Scalar(long re, long im) : re_(re), im_(im) {}
  Scalar(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar i() { return Scalar(0, 1); }

  const Rational &re() const { return re_; }
  const Rational &im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  /// |z|^2, always rational.
  Rational norm2() const { return re_ * re_ + im_ * im_; }

  Scalar &operator+=(const Scalar &o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar &operator-=(const Scalar &o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar &operator*=(const Scalar &o);
  Scalar &operator/=(const Scalar &o);

  friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
  friend Scalar operator-(const Scalar &a) { return Scalar(-a.re_, -a.im_); }

  friend bool operator==(const Scalar &a, const Scalar &b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string str() const;

  friend void fused_add_mul(Scalar &acc, const Scalar &a, const Scalar &b);

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Computes acc += a * b without temporaries for the common hot loop.
void fused_add_mul(Scalar &acc, const Scalar &a, const Scalar &b);

using Vec = std::vector<Scalar>;

/// Dense row-major matrix over Scalar.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Mat(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Mat identity(std::size_t n);
  static Mat from_rows(std::span<const Vec> rows, std::size_t cols);
  static Mat from_columns(std::span<const Vec> cols, std::size_t rows);
  /// Reshapes a vector of length rows*cols in row-major order.
  static Mat reshape(const Vec &v, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const Vec &entries() const { return data_; }
  Vec row(std::size_t r) const;
  Vec column(std::size_t c) const;

  bool is_zero() const;
  Mat transpose() const;
  Mat adjoint() const;
  Mat conj() const;

  friend bool operator==(const Mat &a, const Mat &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec data_;
};

Mat mat_mul(const Mat &a, const Mat &b);
inline Mat operator*(const Mat &a, const Mat &b) { return mat_mul(a, b); }
Mat operator+(const Mat &a, const Mat &b);
Mat operator-(const Mat &a, const Mat &b);
Mat operator*(const Scalar &s, const Mat &m);
Vec mat_vec(const Mat &m, const Vec &v);
Mat kron(const Mat &a, const Mat &b);

/// The antisymmetric 2x2 tensor [[0,1],[-1,0]].
const Mat &epsilon();

/// Bilinear sum a_i * b_i (no conjugation).
Scalar dot(const Vec &a, const Vec &b);
/// Hermitian inner product sum conj(a_i) * b_i.
Scalar inner(const Vec &a, const Vec &b);
Vec conj(const Vec &v);
Vec scaled(const Vec &v, const Scalar &s);
Vec operator+(const Vec &a, const Vec &b);
Vec operator-(const Vec &a, const Vec &b);
bool is_zero(const Vec &v);
Vec kron(const Vec &a, const Vec &b);

/// Rescales by a positive rational so every real and imaginary part is an
/// integer and their overall gcd is 1. The span of v is unchanged.
Vec primitive(const Vec &v);

std::size_t rank(const Mat &m);
std::size_t rank(std::span<const Vec> vectors);

/// Exact kernel basis of M; size is cols - rank(M).
std::vector<Vec> nullspace(const Mat &m);

/// True iff v lies in span(S). The zero vector is in every span.
bool is_in_span(const Vec &v, std::span<const Vec> spanning);

/// Maximal linearly independent subset, in input order.
std::vector<Vec> independent_subset(std::span<const Vec> vectors);

/// Orthogonal projector onto span(S), via unnormalized Gram-Schmidt and
/// sum v v^dagger / <v,v>. Throws ContractError if S spans only zero.
Mat projector_from_span(std::span<const Vec> spanning);

/// Incremental row-echelon basis used for span membership and rank.
/// Rows are stored with a unit leading coefficient.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  /// Reduces v against the basis; returns the residual.
  Vec reduce(Vec v) const;
  /// Adds v if independent. Returns true when the rank grew.
  bool insert(const Vec &v);
  bool contains(const Vec &v) const { return is_zero(reduce(v)); }

 private:
  std::size_t dim_;
  std::vector<std::pair<std::size_t, Vec>> rows_;  // sorted by pivot column
};

}  // namespace qsat

#endif  // QSAT_EXACTFIELD_HPP
