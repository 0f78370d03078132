#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shk/poly.hpp"

namespace shk {

// Two-term recurrent polynomial families. Fib follows the GFib specialization
// (seeds 0, 1); FibCor is the variant with both seeds 1, kept so reports can
// say which convention an identity actually matches.
enum class Family { GFib, GLuc, NGLuc, ChebT, ChebU, ChebV, Fib, FibCor, Luc, QuotForm, SumForm };

const std::vector<Family>& all_families();
std::string family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

// Memoized terms of a_n = A a_{n-1} + B a_{n-2} with family-specific seeds
// and coefficient polynomials.
class PolySequence {
 public:
  explicit PolySequence(Family f);

  Family family() const { return family_; }
  const ContextPtr& ctx() const { return ctx_; }
  const Poly& term(size_t n);

 private:
  Family family_;
  ContextPtr ctx_;
  Poly coef_a_;
  Poly coef_b_;
  std::vector<Poly> memo_;
};

// det(a_{n+i+j})_{0<=i,j<r} with entries zeroed when i+j > r.
Poly subhankel_det(PolySequence& seq, int r, int n);
// Same determinant without the zero pattern.
Poly hankel_det(PolySequence& seq, int r, int n);

struct SHIdentityReport {
  enum class Status { Equal, ConstantRatio, Mismatch };
  Status status = Status::Mismatch;
  Poly lhs;
  Poly rhs;
  Rational ratio{0};  // meaningful for Equal (1) and ConstantRatio
  std::string note;
  bool hankel_checked = false;
  bool hankel_vanishes = false;

  bool ratio_defined() const { return status != Status::Mismatch; }
};

// lhs = subhankel determinant of the family window, rhs = the predicted
// closed form; the report carries the exact rational ratio when one exists
// and a witness note otherwise. For r >= 3 the full Hankel determinant is
// also checked to vanish.
SHIdentityReport verify_identity(Family f, int r, int n);

}  // namespace shk
