#pragma once

#include <vector>

#include "shk/poly.hpp"
#include "shk/rational.hpp"

namespace shk {

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense matrix of polynomials sharing one context.
class PolyMatrix {
 public:
  PolyMatrix(ContextPtr ctx, size_t rows, size_t cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const ContextPtr& ctx() const { return ctx_; }

  Poly& at(size_t i, size_t j) { return a_.at(i * cols_ + j); }
  const Poly& at(size_t i, size_t j) const { return a_.at(i * cols_ + j); }

  // Fraction-free elimination; every interior division is exact.
  Poly determinant() const;

  // First-row expansion; exponential, used as an independent cross-check.
  Poly cofactor_determinant() const;

 private:
  ContextPtr ctx_;
  size_t rows_, cols_;
  std::vector<Poly> a_;
};

// Dense matrix of rationals.
class RationalMatrix {
 public:
  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Rational& at(size_t i, size_t j) { return a_.at(i * cols_ + j); }
  const Rational& at(size_t i, size_t j) const { return a_.at(i * cols_ + j); }

  RationalMatrix transpose() const;
  RationalMatrix operator+(const RationalMatrix& o) const;
  RationalMatrix operator-(const RationalMatrix& o) const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  friend RationalMatrix operator*(const Rational& c, const RationalMatrix& m);
  bool operator==(const RationalMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool is_zero() const;

  std::vector<Rational> apply(const std::vector<Rational>& v) const;

  // Gauss-Jordan; ShapeError when singular or not square.
  RationalMatrix inverse() const;

  Rational trace() const;

 private:
  size_t rows_, cols_;
  std::vector<Rational> a_;
};

inline RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) {
  return a * b - b * a;
}

}  // namespace shk
