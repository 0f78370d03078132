#include <vector>

#include "doctest.h"
#include "shk/parse.hpp"
#include "shk/poly.hpp"
#include "shk/rng.hpp"

using namespace shk;

namespace {

// Small random polynomial over ctx with the given number of terms.
Poly random_poly(SplitMix64& rng, const ContextPtr& ctx, int terms) {
  Poly p = Poly::zero(ctx);
  for (int t = 0; t < terms; ++t) {
    std::vector<uint32_t> e(ctx->size());
    for (auto& x : e) x = static_cast<uint32_t>(rng.below(3));
    p += Poly::term(ctx, e, random_rational(rng, 6, 3));
  }
  return p;
}

std::vector<Rational> random_point(SplitMix64& rng, size_t n) {
  std::vector<Rational> pt;
  for (size_t i = 0; i < n; ++i) pt.push_back(random_rational(rng, 7, 4));
  return pt;
}

}  // namespace

TEST_CASE("term order is graded lexicographic, highest first") {
  const ContextPtr ctx = VariableContext::make({"x", "y"});
  const Poly p = parse_poly(ctx, "x + y^2 + 3 + x*y + x^2");
  CHECK(p.str() == "x^2 + x*y + y^2 + x + 3");
  CHECK(p.leading_term().m.e == std::vector<uint32_t>{2, 0});
  CHECK(p.leading_coefficient() == Rational(1));
  CHECK(p.total_degree() == 2);
  CHECK_FALSE(p.is_homogeneous());
  CHECK(parse_poly(ctx, "x*y + y^2").is_homogeneous());
}

TEST_CASE("constants and zero behave like scalars") {
  const ContextPtr ctx = VariableContext::numbered("y", 3);
  const Poly z = Poly::zero(ctx);
  const Poly c = Poly::constant(ctx, Rational(5, 3));
  CHECK(z.is_zero());
  CHECK(z.is_constant());
  CHECK(z.constant_value() == Rational(0));
  CHECK(c.is_constant());
  CHECK(c.constant_value() == Rational(5, 3));
  CHECK((c + z) == c);
  CHECK((c * z).is_zero());
  CHECK_THROWS_AS(parse_poly(ctx, "y1 + 1").constant_value(), ValueError);
  CHECK(Poly::constant(ctx, Rational(0)).is_zero());
}

TEST_CASE("ring operations agree with evaluation at random points") {
  const ContextPtr ctx = VariableContext::make({"a", "b", "c"});
  SplitMix64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Poly p = random_poly(rng, ctx, 4);
    const Poly q = random_poly(rng, ctx, 4);
    const Poly r = random_poly(rng, ctx, 3);
    CHECK((p + q) * r == p * r + q * r);
    CHECK(p * q == q * p);
    CHECK((p - q) + q == p);
    const auto pt = random_point(rng, 3);
    CHECK((p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt));
    CHECK((p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt));
    CHECK((-p).evaluate(pt) == -(p.evaluate(pt)));
  }
}

TEST_CASE("powers and derivatives") {
  const ContextPtr ctx = VariableContext::make({"x", "y"});
  const Poly x = Poly::variable(ctx, 0);
  const Poly y = Poly::variable(ctx, 1);
  const Poly p = x + y;
  CHECK(p.pow(0) == Poly::constant(ctx, Rational(1)));
  CHECK(p.pow(3) == parse_poly(ctx, "x^3 + 3*x^2*y + 3*x*y^2 + y^3"));
  CHECK(p.pow(3).derivative(0) == Rational(3) * p.pow(2));

  SplitMix64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const Poly a = random_poly(rng, ctx, 4);
    const Poly b = random_poly(rng, ctx, 4);
    // product rule
    CHECK((a * b).derivative(1) == a.derivative(1) * b + a * b.derivative(1));
    // mixed partials commute
    CHECK(a.derivative(0).derivative(1) == a.derivative(1).derivative(0));
  }
  CHECK(parse_poly(ctx, "x^2*y").degree_in(0) == 2);
  CHECK(parse_poly(ctx, "x^2*y").degree_in(1) == 1);
  CHECK(parse_poly(ctx, "x^2").uses(0));
  CHECK_FALSE(parse_poly(ctx, "x^2").uses(1));
}

TEST_CASE("exact division returns the quotient exactly when it exists") {
  const ContextPtr ctx = VariableContext::make({"x", "y"});
  SplitMix64 rng(33);
  for (int trial = 0; trial < 15; ++trial) {
    Poly a = random_poly(rng, ctx, 3);
    Poly b = random_poly(rng, ctx, 3);
    if (a.is_zero() || b.is_zero()) continue;
    const auto q = (a * b).exact_divide(b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
  }
  const Poly p = parse_poly(ctx, "x^2 - y^2");
  CHECK(*p.exact_divide(parse_poly(ctx, "x - y")) == parse_poly(ctx, "x + y"));
  CHECK_FALSE(p.exact_divide(parse_poly(ctx, "x + 1")).has_value());
  CHECK_FALSE(parse_poly(ctx, "x^2 + y").exact_divide(parse_poly(ctx, "x")).has_value());
  CHECK(Poly::zero(ctx).exact_divide(p).has_value());
}

TEST_CASE("binary operations merge contexts by name union") {
  const ContextPtr cxy = VariableContext::make({"x", "y"});
  const ContextPtr cyz = VariableContext::make({"y", "z"});
  const Poly p = parse_poly(cxy, "x + y");
  const Poly q = parse_poly(cyz, "y + z");
  const Poly sum = p + q;
  CHECK(sum.ctx()->names() == std::vector<std::string>{"x", "y", "z"});
  CHECK(sum == parse_poly(sum.ctx(), "x + 2*y + z"));
  // shared names in contradictory order cannot be merged
  const ContextPtr cyx = VariableContext::make({"y", "x"});
  CHECK_THROWS_AS(p + parse_poly(cyx, "x + y"), ContextError);
}

TEST_CASE("embed and rename move polynomials between contexts") {
  const ContextPtr small = VariableContext::make({"x", "y"});
  const ContextPtr big = VariableContext::make({"w", "x", "y", "z"});
  const Poly p = parse_poly(small, "x^2 - y");
  const Poly e = p.embed(big);
  CHECK(VariableContext::equal(e.ctx(), big));
  CHECK(e == parse_poly(big, "x^2 - y"));

  const ContextPtr target = VariableContext::make({"u1", "u2"});
  const Poly r = p.rename(target, {1, 0});  // x -> u2, y -> u1
  CHECK(r == parse_poly(target, "u2^2 - u1"));
}

TEST_CASE("substitute_all performs simultaneous substitution") {
  const ContextPtr ctx = VariableContext::make({"x", "y"});
  const Poly p = parse_poly(ctx, "x^2 + x*y");
  const ContextPtr tc = VariableContext::make({"t"});
  const Poly t = Poly::variable(tc, 0);
  // x -> t+1, y -> t-1: (t+1)^2 + (t+1)(t-1) = 2t^2 + 2t
  const Poly img = p.substitute_all({t + Poly::constant(tc, Rational(1)),
                                     t - Poly::constant(tc, Rational(1))});
  CHECK(img == parse_poly(tc, "2*t^2 + 2*t"));
  // swapping the variables is a substitution too
  const Poly sw = p.substitute_all({Poly::variable(ctx, 1), Poly::variable(ctx, 0)});
  CHECK(sw == parse_poly(ctx, "y^2 + x*y"));
}

TEST_CASE("canonical text form round-trips") {
  const ContextPtr ctx = VariableContext::numbered("y", 4);
  SplitMix64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const Poly p = random_poly(rng, ctx, 5);
    CHECK(parse_poly(ctx, p.str()) == p);
  }
  CHECK(Poly::zero(ctx).str() == "0");
  CHECK(parse_poly(ctx, "-y1 - 1").str() == "-y1 - 1");
}
