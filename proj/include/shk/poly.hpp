#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shk/context.hpp"
#include "shk/rational.hpp"

namespace shk {

// Exponent vector aligned with a VariableContext, plus cached total degree.
struct Monomial {
  std::vector<uint32_t> e;
  uint32_t total = 0;

  static Monomial unit(size_t nvars) { return Monomial{std::vector<uint32_t>(nvars, 0), 0}; }
  static Monomial of(std::vector<uint32_t> exps);

  bool is_unit() const { return total == 0; }
  Monomial times(const Monomial& o) const;
  bool divides(const Monomial& o) const;  // this | o
  Monomial divide_into(const Monomial& o) const;  // o / this, caller checks divides
  bool operator==(const Monomial& o) const { return total == o.total && e == o.e; }
};

// Graded lexicographic: higher total degree first, ties by exponent vector
// compared left to right (earlier variable with the larger exponent wins).
bool grlex_greater(const Monomial& a, const Monomial& b);

struct MonomialHash {
  size_t operator()(const Monomial& m) const {
    uint64_t h = 1469598103934665603ull;
    for (uint32_t x : m.e) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

// Sparse multivariate polynomial over Rational with a canonical term order:
// terms are kept sorted graded-lexicographically descending, no zero
// coefficients. Binary operations merge contexts by name union.
class Poly {
 public:
  struct Term {
    Monomial m;
    Rational c;
  };

  Poly() = default;  // usable only as a placeholder; all factories set a context

  static Poly zero(ContextPtr ctx) { return Poly(std::move(ctx), {}); }
  static Poly constant(ContextPtr ctx, Rational c);
  static Poly variable(const ContextPtr& ctx, size_t var);
  static Poly term(const ContextPtr& ctx, std::vector<uint32_t> exps, Rational c);

  const ContextPtr& ctx() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_unit()); }
  // Value of a constant polynomial; ValueError if not constant.
  Rational constant_value() const;

  uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.front().m.total; }
  bool is_homogeneous() const;
  uint32_t degree_in(size_t var) const;
  bool uses(size_t var) const { return degree_in(var) > 0; }

  const Term& leading_term() const;
  Rational leading_coefficient() const { return leading_term().c; }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& c, const Poly& p);
  Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
  Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
  Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(uint32_t e) const;
  Poly derivative(size_t var) const;

  // Quotient when the division is exact, nullopt otherwise.
  std::optional<Poly> exact_divide(const Poly& divisor) const;

  // Replaces variable i by images[i]; all images must share one context,
  // which becomes the context of the result.
  Poly substitute_all(const std::vector<Poly>& images) const;

  Rational evaluate(const std::vector<Rational>& point) const;

  // Same polynomial over a context containing at least the variables used.
  Poly embed(const ContextPtr& target) const;

  // Rewrites variable i as target's variable at position map[i].
  Poly rename(const ContextPtr& target, const std::vector<size_t>& map) const;

  // Canonical text form; parse_poly(str()) round-trips.
  std::string str() const;

 private:
  Poly(ContextPtr ctx, std::vector<Term> terms) : ctx_(std::move(ctx)), terms_(std::move(terms)) {}
  static Poly from_unsorted(ContextPtr ctx, std::vector<Term> terms);
  static void align(const Poly& a, const Poly& b, Poly& ea, Poly& eb);

  ContextPtr ctx_;
  std::vector<Term> terms_;
};

}  // namespace shk
