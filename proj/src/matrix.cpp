#include "shk/matrix.hpp"

namespace shk {

PolyMatrix::PolyMatrix(ContextPtr ctx, size_t rows, size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols) {
  a_.assign(rows_ * cols_, Poly::zero(ctx_));
}

Poly PolyMatrix::determinant() const {
  if (rows_ != cols_) throw ShapeError("determinant of non-square matrix");
  const size_t n = rows_;
  if (n == 0) return Poly::constant(ctx_, Rational(1));
  std::vector<Poly> m = a_;
  auto at = [&](size_t i, size_t j) -> Poly& { return m[i * n + j]; };
  int sign = 1;
  Poly prev = Poly::constant(ctx_, Rational(1));
  for (size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k).is_zero()) {
      size_t pivot = k;
      while (pivot < n && at(pivot, k).is_zero()) ++pivot;
      if (pivot == n) return Poly::zero(ctx_);
      for (size_t j = 0; j < n; ++j) std::swap(at(k, j), at(pivot, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Poly num = at(k, k) * at(i, j) - at(i, k) * at(k, j);
        auto q = num.exact_divide(prev);
        if (!q) throw ShapeError("fraction-free elimination lost exactness");
        at(i, j) = std::move(*q);
      }
      at(i, k) = Poly::zero(ctx_);
    }
    prev = at(k, k);
  }
  Poly det = at(n - 1, n - 1);
  return sign < 0 ? -det : det;
}

Poly PolyMatrix::cofactor_determinant() const {
  if (rows_ != cols_) throw ShapeError("determinant of non-square matrix");
  const size_t n = rows_;
  if (n == 0) return Poly::constant(ctx_, Rational(1));
  if (n == 1) return at(0, 0);
  Poly acc = Poly::zero(ctx_);
  for (size_t j = 0; j < n; ++j) {
    if (at(0, j).is_zero()) continue;
    PolyMatrix minor(ctx_, n - 1, n - 1);
    for (size_t i = 1; i < n; ++i) {
      size_t cj = 0;
      for (size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(i - 1, cj++) = at(i, c);
      }
    }
    Poly contrib = at(0, j) * minor.cofactor_determinant();
    acc = (j % 2 == 0) ? acc + contrib : acc - contrib;
  }
  return acc;
}

RationalMatrix RationalMatrix::identity(size_t n) {
  RationalMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix shape mismatch");
  RationalMatrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix shape mismatch");
  RationalMatrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw ShapeError("matrix shape mismatch");
  RationalMatrix r(rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

RationalMatrix operator*(const Rational& c, const RationalMatrix& m) {
  RationalMatrix r = m;
  for (auto& x : r.a_) x *= c;
  return r;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw ShapeError("vector length mismatch");
  std::vector<Rational> out(rows_, Rational(0));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
  return out;
}

RationalMatrix RationalMatrix::inverse() const {
  if (rows_ != cols_) throw ShapeError("inverse of non-square matrix");
  const size_t n = rows_;
  RationalMatrix m = *this;
  RationalMatrix inv = identity(n);
  for (size_t k = 0; k < n; ++k) {
    size_t pivot = k;
    while (pivot < n && m.at(pivot, k).is_zero()) ++pivot;
    if (pivot == n) throw ShapeError("singular matrix");
    if (pivot != k)
      for (size_t j = 0; j < n; ++j) {
        std::swap(m.at(k, j), m.at(pivot, j));
        std::swap(inv.at(k, j), inv.at(pivot, j));
      }
    Rational d = m.at(k, k).inverse();
    for (size_t j = 0; j < n; ++j) {
      m.at(k, j) *= d;
      inv.at(k, j) *= d;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == k || m.at(i, k).is_zero()) continue;
      Rational f = m.at(i, k);
      for (size_t j = 0; j < n; ++j) {
        m.at(i, j) -= f * m.at(k, j);
        inv.at(i, j) -= f * inv.at(k, j);
      }
    }
  }
  return inv;
}

Rational RationalMatrix::trace() const {
  if (rows_ != cols_) throw ShapeError("trace of non-square matrix");
  Rational t(0);
  for (size_t i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

}  // namespace shk
