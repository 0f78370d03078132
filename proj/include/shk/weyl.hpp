#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shk/legendre.hpp"
#include "shk/poly.hpp"
#include "shk/report.hpp"
#include "shk/rng.hpp"

namespace shk {

// Exponent of a formal power: constant + s_coeff * s. Kept separate from the
// numerator polynomial so reading off b(s) stays a coefficient extraction.
struct LinExpS {
  Rational s_coeff{0};
  Rational constant{0};

  LinExpS() = default;
  LinExpS(Rational a, Rational b) : s_coeff(std::move(a)), constant(std::move(b)) {}
  static LinExpS of_int(long c) { return LinExpS(Rational(0), Rational(c)); }

  bool operator==(const LinExpS& o) const {
    return s_coeff == o.s_coeff && constant == o.constant;
  }
  bool is_constant() const { return s_coeff.is_zero(); }
  std::string str() const;
};

// coeff times a product of powers base_i^{exponent_i}; bases are pairwise
// distinct non-constant polynomials over one shared context.
struct PowerProduct {
  ContextPtr ctx;
  Rational coeff{1};
  struct Factor {
    Poly base;
    LinExpS exponent;
  };
  std::vector<Factor> factors;
};

// Plain product with integer exponents; validates the invariants above.
PowerProduct make_power_product(ContextPtr ctx, Rational coeff,
                                const std::vector<std::pair<Poly, long>>& factors);

// The context of a numerator: the base variables plus one extra variable s
// appended last (so base variable indices are unchanged).
ContextPtr context_with_s(const ContextPtr& ctx);
// The one-variable context {s} used for b-polynomials.
ContextPtr s_context();

// num * prod base_i^{exponent_i - mult_i}, where the exponents live in the
// attached product and the mult_i are non-negative denominator
// multiplicities. num is over context_with_s(base context). Kept reduced:
// num shares no exact base factor while the matching mult is positive.
struct FormalElement {
  Poly num;
  std::vector<long> mult;
  PowerProduct attached;
};

// base^{s+1}: every integer exponent e becomes the attached exponent e(s+1).
// The product's coefficient must be 1 (a coefficient c would contribute a
// non-polynomial factor c^{s+1}; callers track it separately).
FormalElement formal_power_s_plus_1(const PowerProduct& base);

// Exact partial derivative: the product rule adds one denominator
// multiplicity per base and the result is reduced again.
FormalElement differentiate(const FormalElement& e, size_t var);

FormalElement formal_add(const FormalElement& a, const FormalElement& b);

// Clears denominator multiplicities by repeated exact division.
void reduce(FormalElement& e);
// Same, trying the bases in the given rotation first (confluence testing).
void reduce_in_order(FormalElement& e, const std::vector<size_t>& order);

bool formal_equal(const FormalElement& a, const FormalElement& b);
std::string formal_str(const FormalElement& e);

// operator is a polynomial in dual variables read as partial derivatives
// (variable i differentiates base variable i); base is a plain power product
// with coefficient 1.
struct BFunctionProblem {
  Poly op;
  PowerProduct base;
  Poly predicted;  // over s_context()
};

// Sum over operator terms c z^alpha of c d^alpha applied to base^{s+1}.
// Partial applications are memoized across operator terms.
FormalElement apply_operator(const BFunctionProblem& p);

struct BExtraction {
  bool ok = false;
  Poly b;  // over s_context()
  std::string witness;
};

// Checks result = b(s) * base^s by cross-multiplication and returns b, or a
// witness of why the result is not of that shape.
BExtraction extract_b(const FormalElement& result, const PowerProduct& base);

// prod_{i=1}^{r-1} (s + i/(r-1)) times (s + (r+1) 2^{k-1}), with the k=0
// trailing factor read as (s + (r+1)/2).
Poly predicted_b_polynomial(int r, int k);

struct BFunctionReport {
  bool pass = false;
  bool unsupported = false;
  Poly measured;  // zero when extraction failed
  Poly predicted;
  std::string note;
};

// b-function of the pair (normalized dual invariant, P1^{r-1} P2^{2r-r^2}):
// applies the operator, extracts b, compares with the predicted product.
BFunctionReport b_function_check(int r);

// Euler identity sum_l y_l d_l (K^{s+1}) = r (s+1) K^{s+1}.
IdentityReport euler_check(int r);

// F(x, x') = sum_i (dF/dx_i) x'_i + F over the doubled context.
Poly polarize(const Poly& f);

// Doubles a context by appending a renamed copy of every variable; the new
// names advance the leading letter (x->y->u->v->p, z->w->q->o) as many steps
// as needed to avoid collisions.
ContextPtr doubled_context(const ContextPtr& ctx);

// Transform partner of polarize on power products: for f_* = c prod B_j^{e_j}
// of a degree-d polynomial's transform, the doubled-variable partner is
//   (d-1)^{1-d} c G^{d-1} prod B_j(new)^{e_j-d+1},
// where G = sum_j e_j <grad B_j(new), old> prod_{l != j} B_l(new)
//         - prod_l B_l(new).
PowerProduct ml_polarization(const PowerProduct& fstar, int d);

// Evaluates c * prod B_i(pt)^{e_i}; integer exponents only.
Rational evaluate_power_product(const PowerProduct& pp, const std::vector<Rational>& pt);

struct PointwiseMLReport {
  bool constant_found = false;
  Rational constant{0};
  IdentityReport details;
};

// Samples points x with F(x) != 0, maps them through z = grad F / F, and
// checks Fstar(z) * F(x) is one constant across samples (1 when Fstar is the
// exact transform of F, constants included).
PointwiseMLReport ml_pointwise_product_check(const Poly& F, const PowerProduct& Fstar,
                                             int samples, uint64_t seed);

// b-function of the k-times polarized pair: the polarized P1 as operator,
// the transform-polarized power product as base. A result that cannot be
// written as b(s) times the base power reports unsupported with the witness.
BFunctionReport polarized_b_function_check(int r, int k);

// "(s + 1/2)(s + 1)(s + 4)" style display; rational roots are split off,
// any unfactored residual is printed raw.
std::string factored_b_display(const Poly& b);

}  // namespace shk
