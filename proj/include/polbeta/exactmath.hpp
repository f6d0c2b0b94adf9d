#pragma once

// Exact integer/rational kernel. Everything here is pure; no floating point.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace polbeta {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds a reduced rational with positive denominator. Throws on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den);

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Dense row-major matrix. Used with Integer entries for lattice data and with
/// Rational entries for the complex structure and the Hermitian pairing.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix: entry count does not match dimensions");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows);

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<T>& entries() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  /// Principal submatrix on the given (ordered) index list.
  Matrix principal(const std::vector<std::size_t>& idx) const {
    Matrix s(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = (*this)(idx[i], idx[j]);
    return s;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix: incompatible product");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += a(i, k) * b(k, j);
      }
    return p;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix: dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);

struct SmithForm {
  IntMatrix U;  // unimodular row transform
  IntMatrix S;  // diagonal, nonnegative, each entry divides the next
  IntMatrix V;  // unimodular column transform
  std::vector<Integer> diagonal() const;
};

/// Smith normal form with U * M * V == S.
///
/// Pivoting picks the smallest nonzero absolute value in the active block,
/// breaking ties by lowest row and then lowest column, so the transforms are
/// reproducible across runs.
SmithForm smith_normal_form(const IntMatrix& m);

/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);

bool is_alternating(const IntMatrix& a);

/// Pfaffian by first-row expansion, memoized on the set of remaining indices.
/// Throws std::invalid_argument for odd or non-alternating input (dimension <= 16).
Integer pfaffian(const IntMatrix& a);

bool is_symmetric(const RatMatrix& s);

/// Leading principal minors, computed by exact elimination.
std::vector<Rational> leading_principal_minors(const RatMatrix& s);

/// Sylvester's criterion. Throws std::invalid_argument on non-symmetric input.
bool is_positive_definite(const RatMatrix& s);

/// Largest m with m^g <= n (n >= 1, g >= 1).
Integer integer_root(const Integer& n, unsigned g);

Integer ipow(const Integer& base, unsigned exp);

}  // namespace polbeta
