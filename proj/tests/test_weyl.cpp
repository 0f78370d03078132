#include <vector>

#include "doctest.h"
#include "shk/parse.hpp"
#include "shk/space.hpp"
#include "shk/weyl.hpp"

using namespace shk;

TEST_CASE("exponent expressions print and compare") {
  const LinExpS e(Rational(2), Rational(-1, 2));
  CHECK(e == LinExpS(Rational(2), Rational(-1, 2)));
  CHECK_FALSE(e == LinExpS::of_int(3));
  CHECK(LinExpS::of_int(3).is_constant());
  CHECK_FALSE(e.is_constant());
}

TEST_CASE("power products validate their invariants") {
  const ContextPtr ctx = VariableContext::numbered("y", 3);
  const Poly p = parse_poly(ctx, "y1*y3 - y2^2");
  const Poly q = parse_poly(ctx, "y3");
  CHECK_NOTHROW(make_power_product(ctx, Rational(1), {{p, 2}, {q, -1}}));
  CHECK_THROWS_AS(make_power_product(ctx, Rational(1), {{Poly::constant(ctx, Rational(2)), 1}}),
                  ValueError);
  CHECK_THROWS_AS(make_power_product(ctx, Rational(1), {{p, 1}, {p, 2}}), ValueError);
}

TEST_CASE("the exponent variable is appended after the base variables") {
  const ContextPtr ctx = VariableContext::numbered("y", 3);
  const ContextPtr cs = context_with_s(ctx);
  CHECK(cs->names() == std::vector<std::string>{"y1", "y2", "y3", "s"});
  CHECK(s_context()->names() == std::vector<std::string>{"s"});
  CHECK_THROWS_AS(context_with_s(VariableContext::make({"s", "x"})), ContextError);
}

TEST_CASE("derivatives of a formal power follow the product rule exactly") {
  const InvariantSet inv = invariants(2);
  const PowerProduct base = make_power_product(inv.yctx, Rational(1), {{inv.P1, 1}});
  const FormalElement K = formal_power_s_plus_1(base);
  const ContextPtr cs = K.num.ctx();

  // d/dy3 (P1^{s+1}) = (s+1) y1 P1^s
  const FormalElement d3 = differentiate(K, 2);
  CHECK(d3.mult[0] == 1);
  CHECK(d3.num == parse_poly(cs, "y1*s + y1"));

  // d/dy1 d/dy3: (s+1) P1^s + s(s+1) y1 y3 P1^{s-1}, held over denominator P1^2
  const FormalElement d13 = differentiate(d3, 0);
  CHECK(d13.mult[0] == 2);
  CHECK(d13.num ==
        parse_poly(cs, "y1*y3*s^2 + y1*y3*s") + parse_poly(cs, "s + 1") * inv.P1.embed(cs));

  // d^2/dy2^2: -2(s+1) P1^s + 4 s(s+1) y2^2 P1^{s-1}
  const FormalElement d22 = differentiate(differentiate(K, 1), 1);
  CHECK(d22.mult[0] == 2);
  CHECK(d22.num == parse_poly(cs, "4*y2^2*s^2 + 4*y2^2*s") -
                       Rational(2) * (parse_poly(cs, "s + 1") * inv.P1.embed(cs)));

  // mixed partials commute
  const FormalElement d31 = differentiate(differentiate(K, 0), 2);
  CHECK(formal_equal(d13, d31));

  // addition is commutative and respects the attached product
  CHECK(formal_equal(formal_add(d13, d22), formal_add(d22, d13)));

  // coefficient 1 is required: c^{s+1} is not polynomial data
  CHECK_THROWS_AS(formal_power_s_plus_1(
                      make_power_product(inv.yctx, Rational(2), {{inv.P1, 1}})),
                  ValueError);
}

TEST_CASE("clearing denominators is independent of the division order") {
  const InvariantSet inv = invariants(2);
  const PowerProduct base =
      make_power_product(inv.yctx, Rational(1), {{inv.P1, 1}, {inv.P2, 1}});
  FormalElement K = formal_power_s_plus_1(base);
  // differentiate twice to populate denominators, then multiply back
  FormalElement e = differentiate(differentiate(K, 0), 2);
  const ContextPtr cs = e.num.ctx();
  e.num = e.num * inv.P1.embed(cs).pow(2) * inv.P2.embed(cs);
  FormalElement a = e, b = e, c = e;
  reduce_in_order(a, {0, 1});
  reduce_in_order(b, {1, 0});
  reduce(c);
  CHECK(formal_equal(a, b));
  CHECK(formal_equal(a, c));
  CHECK(a.mult == c.mult);
}

TEST_CASE("rational function results are rejected with a witness") {
  const InvariantSet inv = invariants(2);
  const PowerProduct base = make_power_product(inv.yctx, Rational(1), {{inv.P1, 1}});
  const FormalElement d3 = differentiate(formal_power_s_plus_1(base), 2);
  const BExtraction bad = extract_b(d3, base);
  CHECK_FALSE(bad.ok);
  CHECK(bad.witness.find("y1") != std::string::npos);
}

TEST_CASE("b-polynomial of the invariant pair matches the product prediction") {
  for (int r = 2; r <= 4; ++r) {
    const BFunctionReport rep = b_function_check(r);
    INFO("r = ", r, " note: ", rep.note);
    CHECK(rep.pass);
    CHECK(rep.measured == rep.predicted);
  }
  // the smallest case in explicit factored form
  const BFunctionReport r2 = b_function_check(2);
  CHECK(factored_b_display(r2.measured) == "(s + 1)(s + 3/2)");
  CHECK(r2.measured == parse_poly(s_context(), "s^2 + 5/2*s + 3/2"));
}

TEST_CASE("predicted b-polynomial factors") {
  // prod_{i<r} (s + i/(r-1)) (s + (r+1)/2) for the unpolarized case
  CHECK(factored_b_display(predicted_b_polynomial(2, 0)) == "(s + 1)(s + 3/2)");
  CHECK(factored_b_display(predicted_b_polynomial(3, 0)) == "(s + 1/2)(s + 1)(s + 2)");
  CHECK(factored_b_display(predicted_b_polynomial(4, 0)) ==
        "(s + 1/3)(s + 2/3)(s + 1)(s + 5/2)");
  // k shifts only the trailing factor: (r+1) 2^{k-1}
  CHECK(factored_b_display(predicted_b_polynomial(3, 1)) == "(s + 1/2)(s + 1)(s + 4)");
  CHECK(factored_b_display(predicted_b_polynomial(3, 2)) == "(s + 1/2)(s + 1)(s + 8)");
  CHECK_THROWS_AS(predicted_b_polynomial(1, 0), ValueError);
}

TEST_CASE("euler identity for the invariant power") {
  for (int r = 2; r <= 5; ++r) {
    const IdentityReport rep = euler_check(r);
    INFO("r = ", r);
    CHECK(rep.passed());
  }
}

TEST_CASE("polarization doubles the variables and keeps the original part") {
  const InvariantSet inv = invariants(2);
  const Poly F = polarize(inv.P1);
  CHECK(F.ctx()->names() == std::vector<std::string>{"y1", "y2", "y3", "u1", "u2", "u3"});
  CHECK(F == parse_poly(F.ctx(), "y3*u1 - 2*y2*u2 + y1*u3 + y1*y3 - y2^2"));
  // block naming avoids collisions with existing names
  const ContextPtr mixed = VariableContext::make({"y1", "u1"});
  CHECK(doubled_context(mixed)->names() ==
        std::vector<std::string>{"y1", "u1", "v1", "p1"});
  const ContextPtr dual = VariableContext::make({"z1", "w1"});
  CHECK(doubled_context(dual)->names() ==
        std::vector<std::string>{"z1", "w1", "q1", "o1"});
}

TEST_CASE("transform partner of the squared variable") {
  // f = x1^2 has transform f_* = z1^2 / 4; the doubled partner is
  // (1/4) (2 z1 - w1) w1, and the pointwise product against polarize(f) is 1
  const ContextPtr x = VariableContext::make({"x1"});
  const ContextPtr z = VariableContext::make({"z1"});
  const Poly f = Poly::term(x, {2}, Rational(1));
  const PowerProduct fstar =
      make_power_product(z, Rational(1, 4), {{Poly::variable(z, 0), 2}});
  const Poly F = polarize(f);
  CHECK(F == parse_poly(F.ctx(), "2*x1*y1 + x1^2"));
  const PowerProduct Fstar = ml_polarization(fstar, 2);
  CHECK(Fstar.coeff == Rational(1, 4));
  REQUIRE(Fstar.factors.size() == 2);
  const Poly g = parse_poly(Fstar.ctx, "2*z1 - w1");
  const Poly w = Poly::variable(Fstar.ctx, *Fstar.ctx->find("w1"));
  CHECK(((Fstar.factors[0].base == g && Fstar.factors[1].base == w) ||
         (Fstar.factors[0].base == w && Fstar.factors[1].base == g)));
  for (const auto& fac : Fstar.factors) CHECK(fac.exponent == LinExpS::of_int(1));

  const PointwiseMLReport pw = ml_pointwise_product_check(F, Fstar, 10, 987654321ull);
  CHECK(pw.details.passed());
  CHECK(pw.constant_found);
  CHECK(pw.constant.is_one());
}

TEST_CASE("transform partners of the determinant invariant multiply to one") {
  for (int r = 2; r <= 3; ++r) {
    const InvariantSet inv = invariants(r);
    const MLReport ml = verify_ml_closed_form(r, MLDirection::PToQ);
    const long corner = 2L * r - 1L * r * r;
    std::vector<std::pair<Poly, long>> fac{{inv.Q1, r - 1}};
    if (corner != 0) fac.emplace_back(inv.Q2, corner);
    const PowerProduct H = make_power_product(inv.zctx, ml.constant, fac);
    // the unpolarized pair multiplies to 1 pointwise
    const PointwiseMLReport pw0 = ml_pointwise_product_check(inv.P1, H, 5, 24680ull);
    INFO("r = ", r, " unpolarized constant ", pw0.constant.str());
    CHECK(pw0.details.passed());
    CHECK(pw0.constant.is_one());
    // and so does the polarized pair
    const Poly F = polarize(inv.P1);
    const PowerProduct Fstar = ml_polarization(H, r);
    const PointwiseMLReport pw = ml_pointwise_product_check(F, Fstar, 10, 13579ull);
    INFO("r = ", r, " polarized constant ", pw.constant.str());
    CHECK(pw.details.passed());
    CHECK(pw.constant.is_one());
  }
}

TEST_CASE("b-polynomial of the polarized pair") {
  // zero polarization steps reduce to the plain prediction
  const BFunctionReport k0 = polarized_b_function_check(2, 0);
  CHECK(k0.pass);
  CHECK(k0.measured == predicted_b_polynomial(2, 0));

  const BFunctionReport rep = polarized_b_function_check(3, 1);
  INFO("note: ", rep.note);
  CHECK(rep.pass);
  CHECK_FALSE(rep.unsupported);
  CHECK(factored_b_display(rep.measured) == "(s + 1/2)(s + 1)(s + 4)");
  CHECK(rep.measured == predicted_b_polynomial(3, 1));
}

TEST_CASE("factored display splits off rational roots") {
  const ContextPtr s = s_context();
  CHECK(factored_b_display(parse_poly(s, "s^2 + 5/2*s + 3/2")) == "(s + 1)(s + 3/2)");
  CHECK(factored_b_display(parse_poly(s, "2*s + 2")) == "2 (s + 1)");
  CHECK(factored_b_display(parse_poly(s, "1")) == "1");
  CHECK(factored_b_display(parse_poly(s, "s^2 + 1")) == "(s^2 + 1)");
  CHECK_THROWS_AS(factored_b_display(parse_poly(VariableContext::numbered("y", 2), "y1")),
                  ValueError);
}
