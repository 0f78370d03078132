#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace shk {

struct ValueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact rational number. Always reduced, denominator positive.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(static_cast<long>(n)) {}
  Rational(long n) : v_(n) {}
  Rational(long num, long den) {
    if (den == 0) throw ValueError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  // Accepts "p" or "p/q" with optional leading minus, q > 0 after reduction.
  static Rational from_string(std::string_view text);

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw ValueError("division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational inverse() const {
    if (is_zero()) throw ValueError("inverse of zero");
    return Rational(mpq_class(1) / v_);
  }

  // Integer power; e may be negative (base must be nonzero then). 0^0 = 1.
  Rational pow(long e) const;

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  std::string str() const { return v_.get_str(); }
  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

 private:
  mpq_class v_;
};

inline Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  if (is_zero()) {
    if (e < 0) throw ValueError("zero to a negative power");
    return Rational(0);
  }
  const bool neg = e < 0;
  const unsigned long ue = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), v_.get_num().get_mpz_t(), ue);
  mpz_pow_ui(den.get_mpz_t(), v_.get_den().get_mpz_t(), ue);
  mpq_class out(num, den);
  out.canonicalize();
  Rational result(out);
  return neg ? result.inverse() : result;
}

inline Rational Rational::from_string(std::string_view text) {
  if (text.empty()) throw ValueError("empty rational literal");
  const auto ok_int = [](std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!ok_int(num)) throw ValueError("bad rational literal: " + std::string(text));
  if (slash != std::string_view::npos) {
    std::string_view den = text.substr(slash + 1);
    if (!ok_int(den) || den.front() == '-')
      throw ValueError("bad rational literal: " + std::string(text));
    mpq_class v(std::string(text), 10);
    if (v.get_den() == 0) throw ValueError("rational with zero denominator");
    v.canonicalize();
    return Rational(v);
  }
  return Rational(mpq_class(std::string(text), 10));
}

}  // namespace shk
