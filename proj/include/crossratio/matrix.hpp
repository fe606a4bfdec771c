#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "crossratio/errors.hpp"
#include "crossratio/polynomial.hpp"

namespace crossratio {

template <class T>
using Vec = std::vector<T>;

/// Dense row-major matrix over an exact field (Rational or QuadExt).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ValidationError("ragged matrix literal");
      e_.insert(e_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::size_t dim() const {
    require_square("dim");
    return rows_;
  }

  T& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Vec<T> row(std::size_t i) const { return Vec<T>(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_); }

  T trace() const {
    require_square("trace");
    T t(0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ValidationError("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.require_same_shape(b);
    for (std::size_t i = 0; i < a.e_.size(); ++i) a.e_[i] += b.e_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.require_same_shape(b);
    for (std::size_t i = 0; i < a.e_.size(); ++i) a.e_[i] -= b.e_[i];
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.e_) x *= s;
    return a;
  }
  friend Vec<T> operator*(const Matrix& a, std::span<const T> v) {
    if (v.size() != a.cols_) throw ValidationError("matrix-vector dimension mismatch");
    Vec<T> r(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }
  friend Vec<T> operator*(const Matrix& a, const Vec<T>& v) { return a * std::span<const T>(v); }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!(x == T(0))) return false;
    return true;
  }

  const std::vector<T>& entries() const { return e_; }

  void require_square(const char* what) const {
    if (rows_ != cols_) throw ValidationError(std::string(what) + " requires a square matrix");
  }

 private:
  void require_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw ValidationError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> e_;
};

template <class T>
Matrix<T> power(const Matrix<T>& m, unsigned k) {
  Matrix<T> r = Matrix<T>::identity(m.dim());
  Matrix<T> base = m;
  while (k > 0) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return r;
}

/// Determinant by Gaussian elimination over the field.
template <class T>
T determinant(Matrix<T> m) {
  std::size_t n = m.dim();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == T(0)) ++p;
    if (p == n) return T(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == T(0)) continue;
      T f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Gauss-Jordan inverse; throws DomainError when singular.
template <class T>
Matrix<T> inverse(const Matrix<T>& m0) {
  std::size_t n = m0.dim();
  Matrix<T> m = m0;
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == T(0)) ++p;
    if (p == n) throw DomainError("singular matrix has no inverse");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    T piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == T(0)) continue;
      T f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Characteristic polynomial det(tI - M) by the Faddeev-LeVerrier recursion:
/// N_0 = I, c_{n-k} = -tr(M N_{k-1}) / k, N_k = M N_{k-1} + c_{n-k} I.
template <class T>
Polynomial<T> char_poly(const Matrix<T>& m) {
  std::size_t n = m.dim();
  std::vector<T> c(n + 1, T(0));
  c[n] = T(1);
  Matrix<T> acc = Matrix<T>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<T> prod = m * acc;
    c[n - k] = -prod.trace() / T(static_cast<long>(k));
    acc = prod;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += c[n - k];
  }
  return Polynomial<T>(std::move(c));
}

/// p(M) by Horner's rule.
template <class T>
Matrix<T> evaluate(const Polynomial<T>& p, const Matrix<T>& m) {
  std::size_t n = m.dim();
  Matrix<T> acc(n, n);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * m;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
  }
  return acc;
}

/// Kronecker product a ⊗ b.
template <class T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == T(0)) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

template <class T>
Vec<T> kronecker(const Vec<T>& a, const Vec<T>& b) {
  Vec<T> k;
  k.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) k.push_back(x * y);
  return k;
}

/// Direct sum diag(a, b).
template <class T>
Matrix<T> direct_sum(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> s(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) s(a.rows() + i, a.cols() + j) = b(i, j);
  return s;
}

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw ValidationError("dot product dimension mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  return dot(std::span<const T>(a), std::span<const T>(b));
}

/// A linear form u ↦ Σ coeff_i u_i.
template <class T>
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(Vec<T> coeffs) : c_(std::move(coeffs)) {}
  LinearForm(std::initializer_list<T> coeffs) : c_(coeffs) {}

  std::size_t dim() const { return c_.size(); }
  const Vec<T>& coeffs() const { return c_; }
  T operator()(std::span<const T> u) const { return dot(std::span<const T>(c_), u); }
  T operator()(const Vec<T>& u) const { return (*this)(std::span<const T>(u)); }

  friend LinearForm operator-(const LinearForm& f) {
    Vec<T> c = f.c_;
    for (auto& x : c) x = -x;
    return LinearForm(std::move(c));
  }
  friend LinearForm operator-(const LinearForm& f, const LinearForm& g) {
    if (f.dim() != g.dim()) throw ValidationError("linear form dimension mismatch");
    Vec<T> c = f.c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= g.c_[i];
    return LinearForm(std::move(c));
  }
  friend bool operator==(const LinearForm& f, const LinearForm& g) { return f.c_ == g.c_; }

 private:
  Vec<T> c_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]";
  }
  return os << "]";
}

}  // namespace crossratio
