// Small dense matrix/vector toolkit shared by the float and exact-rational
// code paths. Row-major storage, value semantics.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ioopt {

using Rational = mpq_class;

template <class T>
using Vector = std::vector<T>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  const std::vector<T>& data() const noexcept { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == T(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += b(i, j);
  return a;
}

template <class T, class S>
Matrix<T> scaled(Matrix<T> a, const S& s) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) *= s;
  return a;
}

/// Row vector times matrix: (x M)_j = sum_i x_i m_ij.
template <class T>
Vector<T> left_multiply(std::span<const T> x, const Matrix<T>& m) {
  if (x.size() != m.rows()) throw std::invalid_argument("row vector length mismatch");
  Vector<T> y(m.cols(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == T(0)) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) y[j] += x[i] * m(i, j);
  }
  return y;
}

/// Matrix times column vector: (M x)_i = sum_j m_ij x_j.
template <class T>
Vector<T> right_multiply(const Matrix<T>& m, std::span<const T> x) {
  if (x.size() != m.cols()) throw std::invalid_argument("column vector length mismatch");
  Vector<T> y(m.rows(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

template <class T>
Vector<T> left_multiply(const Vector<T>& x, const Matrix<T>& m) {
  return left_multiply(std::span<const T>(x), m);
}
template <class T>
Vector<T> right_multiply(const Matrix<T>& m, const Vector<T>& x) {
  return right_multiply(m, std::span<const T>(x));
}

/// D_a^{-1} M D_b, i.e. m_ij * b_j / a_i.
template <class T>
Matrix<T> diagonal_similarity(const Matrix<T>& m, std::span<const T> left_inv, std::span<const T> right) {
  Matrix<T> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) * right[j] / left_inv[i];
  return out;
}

template <class T>
Vector<T> hadamard(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw std::invalid_argument("hadamard length mismatch");
  Vector<T> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * b[i];
  return c;
}

inline double to_double(double x) { return x; }
/// Nearest double, ties to even (GMP's get_d truncates).
double to_double(const Rational& x);

Matrix<double> to_double(const Matrix<Rational>& m);
Vector<double> to_double(std::span<const Rational> v);
/// Exact binary value of each double (no rounding).
Matrix<Rational> to_rational(const Matrix<double>& m);
Vector<Rational> to_rational(std::span<const double> v);

double max_abs(std::span<const double> v);
double sum(std::span<const double> v);

/// Parses a decimal literal ("-12.5", "3e-2", "0.14") or a fraction ("7/3")
/// exactly. Returns nullopt on malformed input.
std::optional<Rational> parse_exact(std::string_view text);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double x);

/// Exact decimal text when the rational has a terminating expansion,
/// otherwise "p/q".
std::string format_exact(const Rational& x);

/// LU factorization with row pivoting. Partial pivoting on magnitude for
/// floating types; first nonzero pivot for exact types.
template <class T>
class LuFactor {
 public:
  explicit LuFactor(Matrix<T> m) : lu_(std::move(m)), perm_(lu_.rows()) {
    if (!lu_.square()) throw std::invalid_argument("LU of non-square matrix");
    const std::size_t n = lu_.rows();
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      if constexpr (std::is_same_v<T, Rational>) {
        while (p < n && lu_(p, k) == 0) ++p;
        if (p == n) {
          singular_ = true;
          return;
        }
      } else {
        double best = std::abs(lu_(k, k));
        for (std::size_t r = k + 1; r < n; ++r)
          if (std::abs(lu_(r, k)) > best) {
            best = std::abs(lu_(r, k));
            p = r;
          }
        if (best == 0.0 || !std::isfinite(best)) {
          singular_ = true;
          return;
        }
      }
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(p, j), lu_(k, j));
        std::swap(perm_[p], perm_[k]);
        sign_ = -sign_;
      }
      for (std::size_t r = k + 1; r < n; ++r) {
        if (lu_(r, k) == T(0)) continue;
        lu_(r, k) /= lu_(k, k);
        const T f = lu_(r, k);
        for (std::size_t j = k + 1; j < n; ++j) lu_(r, j) -= f * lu_(k, j);
      }
    }
  }

  bool singular() const noexcept { return singular_; }
  std::size_t size() const noexcept { return lu_.rows(); }

  T determinant() const {
    if (singular_) return T(0);
    T det = T(sign_);
    for (std::size_t i = 0; i < lu_.rows(); ++i) det *= lu_(i, i);
    return det;
  }

  /// Solves M x = b.
  Vector<T> solve(std::span<const T> b) const {
    require_regular();
    const std::size_t n = lu_.rows();
    Vector<T> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      T s = b[perm_[i]];
      for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
      y[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      T s = y[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * y[j];
      y[i] = s / lu_(i, i);
    }
    return y;
  }

  /// Solves x M = b for a row vector x (equivalently M^T x^T = b^T).
  Vector<T> solve_left(std::span<const T> b) const {
    require_regular();
    const std::size_t n = lu_.rows();
    // P M = L U  =>  x M = b  <=>  (x P^T) L U = b.
    Vector<T> z(n);
    for (std::size_t j = 0; j < n; ++j) {
      T s = b[j];
      for (std::size_t i = 0; i < j; ++i) s -= z[i] * lu_(i, j);
      z[j] = s / lu_(j, j);
    }
    Vector<T> w(n);
    for (std::size_t j = n; j-- > 0;) {
      T s = z[j];
      for (std::size_t i = j + 1; i < n; ++i) s -= w[i] * lu_(i, j);
      w[j] = s;
    }
    Vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = w[i];
    return x;
  }

 private:
  void require_regular() const {
    if (singular_) throw std::domain_error("solve with singular factorization");
  }

  Matrix<T> lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  bool singular_ = false;
};

/// Characteristic polynomial coefficients c_0..c_d of det(tI - M), monic,
/// computed exactly (Faddeev-LeVerrier).
Vector<Rational> characteristic_polynomial(const Matrix<Rational>& m);

}  // namespace ioopt
