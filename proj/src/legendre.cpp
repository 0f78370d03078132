#include "shk/legendre.hpp"

namespace shk {

std::vector<Rational> inv_map(const InvariantSet& inv, const CharacterWeight& us,
                              const std::vector<Rational>& y) {
  if (y.size() != static_cast<size_t>(inv.r + 1)) throw ValueError("expected r+1 coordinates");
  const Rational p1 = inv.P1.evaluate(y);
  const Rational p2 = inv.P2.evaluate(y);
  if (p1.is_zero() || p2.is_zero()) throw SingularPointError("point lies in the singular set");
  const int r = inv.r;
  std::vector<Rational> z(r + 1, Rational(0));
  for (int l = 0; l <= r; ++l) z[l] = us.s1 * inv.P1.derivative(l).evaluate(y) / p1;
  z[r] += (us.s2 - Rational(r - 1) * us.s1) / p2;
  return z;
}

MLReport verify_ml_closed_form(int r, MLDirection dir) {
  MLReport rep;
  InvariantSet inv = invariants(r);
  const bool ptoq = dir == MLDirection::PToQ;
  const Poly& src = ptoq ? inv.P1 : inv.Q1;
  const Poly& dst = ptoq ? inv.Q1 : inv.P1;
  const size_t corner = ptoq ? 0 : static_cast<size_t>(r);

  std::vector<Poly> grad;
  grad.reserve(r + 1);
  for (int l = 0; l <= r; ++l) grad.push_back(src.derivative(l));
  Poly composed = dst.substitute_all(grad);

  const long deg = static_cast<long>(r) * (r - 1);
  if (!composed.is_homogeneous() || composed.total_degree() != static_cast<uint32_t>(deg)) {
    rep.status = MLReport::Status::Fail;
    rep.note = "substituted invariant is not homogeneous of degree " + std::to_string(deg);
    return rep;
  }

  Poly numer = src.pow(r - 1) * grad[corner].pow(static_cast<uint32_t>(r * r - 2 * r));
  Poly denom = composed.pow(r - 1);
  if (numer.is_homogeneous() && denom.is_homogeneous() &&
      numer.total_degree() != denom.total_degree()) {
    rep.status = MLReport::Status::Fail;
    rep.note = "cross-multiplied sides have different degrees";
    return rep;
  }

  Rational measured;
  bool found = false;
  if (auto q = numer.exact_divide(denom); q && q->is_constant()) {
    measured = q->constant_value();
    found = true;
  } else if (auto qr = denom.exact_divide(numer); qr && qr->is_constant() && !qr->is_zero()) {
    measured = qr->constant_value().inverse();
    found = true;
  }
  if (!found) {
    rep.status = MLReport::Status::Fail;
    rep.note = "sides are not proportional; leading monomials " + numer.leading_term().c.str() +
               "... vs " + denom.leading_term().c.str() + "...";
    return rep;
  }

  // The two directions have different true constants: substituting grad P1
  // into Q1 scales by (2^{ell2(r)+r-1} (r-1))^{r-1}, while grad Q1 into P1
  // scales by 2^{ell2(r)+r-1} (r-1)^{r-1} (verified pointwise at r = 2..5).
  const Rational two_pow = Rational(2).pow(ell2(r) + r - 1);
  if (ptoq)
    rep.expected_constant = (two_pow * Rational(r - 1)).pow(-(static_cast<long>(r) - 1));
  else
    rep.expected_constant = (two_pow * Rational(r - 1).pow(r - 1)).inverse();
  rep.constant = measured;
  if (measured == rep.expected_constant)
    rep.status = MLReport::Status::ExactPass;
  else if (measured == -rep.expected_constant)
    rep.status = MLReport::Status::PassUpToSign;
  else
    rep.status = MLReport::Status::Fail;
  return rep;
}

MLReport verify_ml_pointwise(int r, const CharacterWeight& us, int samples, uint64_t seed) {
  MLReport rep;
  if (!us.s1.is_integer() || !us.s2.is_integer())
    throw ValueError("pointwise verification needs integer weights");
  if (us.s1.is_zero() || us.s2.is_zero()) {
    rep.status = MLReport::Status::Degenerate;
    rep.note = "weight pair with a zero component: the gradient map is not a bijection";
    return rep;
  }
  if (samples < 1) throw ValueError("need at least one sample");
  InvariantSet inv = invariants(r);
  const long s1 = us.s1.numerator().get_si();
  const long s2 = us.s2.numerator().get_si();
  SplitMix64 rng(seed);
  bool have = false;
  Rational constant;
  std::string first_point;
  for (int i = 0; i < samples; ++i) {
    std::vector<Rational> y = sample_nonvanishing(rng, {&inv.P1, &inv.P2}, r + 1);
    std::vector<Rational> z = inv_map(inv, us, y);
    const Rational q1v = inv.Q1.evaluate(z);
    const Rational q2v = inv.Q2.evaluate(z);
    if (q1v.is_zero() || q2v.is_zero()) {
      rep.status = MLReport::Status::Fail;
      rep.note = "image of sample " + std::to_string(i) + " lies in the dual singular set";
      return rep;
    }
    const Rational phi = inv.P1.evaluate(y).pow(s1) * inv.P2.evaluate(y).pow(s2 - (r - 1) * s1);
    const Rational psi = q2v.pow(s1 - (r - 1) * s2) * q1v.pow(s2);
    const Rational product = phi * psi;
    if (!have) {
      constant = product;
      have = true;
      first_point = "sample 0 gives " + product.str();
    } else if (product != constant) {
      rep.status = MLReport::Status::Fail;
      rep.note = first_point + " but sample " + std::to_string(i) + " gives " + product.str();
      return rep;
    }
  }
  rep.status = MLReport::Status::ExactPass;
  rep.constant = constant;
  rep.expected_constant = constant;
  return rep;
}

}  // namespace shk
