#include "shk/weyl.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "shk/space.hpp"

namespace shk {

std::string LinExpS::str() const {
  if (s_coeff.is_zero()) return constant.str();
  std::string out = s_coeff.is_one() ? "s" : s_coeff.str() + "*s";
  if (!constant.is_zero()) {
    out += constant.sign() > 0 ? "+" : "-";
    out += constant.abs().str();
  }
  return out;
}

PowerProduct make_power_product(ContextPtr ctx, Rational coeff,
                                const std::vector<std::pair<Poly, long>>& factors) {
  if (!ctx) throw ValueError("power product needs a context");
  PowerProduct out;
  out.ctx = std::move(ctx);
  out.coeff = std::move(coeff);
  for (const auto& [base, e] : factors) {
    if (e == 0) continue;
    Poly b = base.embed(out.ctx);
    if (b.is_constant()) throw ValueError("power product bases must be non-constant");
    for (const auto& f : out.factors)
      if (f.base == b) throw ValueError("power product bases must be distinct");
    out.factors.push_back({std::move(b), LinExpS::of_int(e)});
  }
  return out;
}

ContextPtr context_with_s(const ContextPtr& ctx) {
  if (ctx->find("s")) throw ContextError("context already uses the exponent variable s");
  return VariableContext::merge(ctx, VariableContext::make({"s"}));
}

ContextPtr s_context() {
  static const ContextPtr sc = VariableContext::make({"s"});
  return sc;
}

FormalElement formal_power_s_plus_1(const PowerProduct& base) {
  if (!base.coeff.is_one())
    throw ValueError("formal powers carry coefficient 1; track scalars separately");
  FormalElement out;
  out.attached.ctx = base.ctx;
  out.attached.coeff = Rational(1);
  for (const auto& f : base.factors) {
    if (!f.exponent.is_constant() || !f.exponent.constant.is_integer())
      throw ValueError("formal powers need integer base exponents");
    out.attached.factors.push_back({f.base, LinExpS(f.exponent.constant, f.exponent.constant)});
  }
  out.num = Poly::constant(context_with_s(base.ctx), Rational(1));
  out.mult.assign(base.factors.size(), 0);
  return out;
}

namespace {

std::vector<Poly> embedded_bases(const FormalElement& e) {
  std::vector<Poly> eb;
  eb.reserve(e.attached.factors.size());
  for (const auto& f : e.attached.factors) eb.push_back(f.base.embed(e.num.ctx()));
  return eb;
}

bool same_attached(const PowerProduct& a, const PowerProduct& b) {
  if (!VariableContext::equal(a.ctx, b.ctx)) return false;
  if (a.coeff != b.coeff || a.factors.size() != b.factors.size()) return false;
  for (size_t i = 0; i < a.factors.size(); ++i)
    if (!(a.factors[i].base == b.factors[i].base) ||
        !(a.factors[i].exponent == b.factors[i].exponent))
      return false;
  return true;
}

}  // namespace

void reduce_in_order(FormalElement& e, const std::vector<size_t>& order) {
  if (e.attached.factors.empty()) return;
  const std::vector<Poly> eb = embedded_bases(e);
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t k : order) {
      while (e.mult.at(k) > 0) {
        auto q = e.num.exact_divide(eb[k]);
        if (!q) break;
        e.num = std::move(*q);
        --e.mult[k];
        progress = true;
      }
    }
  }
}

void reduce(FormalElement& e) {
  std::vector<size_t> order(e.attached.factors.size());
  std::iota(order.begin(), order.end(), size_t{0});
  reduce_in_order(e, order);
}

FormalElement differentiate(const FormalElement& e, size_t var) {
  const size_t n = e.attached.ctx->size();
  if (var >= n) throw ValueError("derivative variable out of range");
  const ContextPtr& cs = e.num.ctx();
  const std::vector<Poly> eb = embedded_bases(e);
  Poly prod_all = Poly::constant(cs, Rational(1));
  for (const auto& b : eb) prod_all *= b;
  Poly out_num = e.num.derivative(var) * prod_all;
  const Poly s = Poly::variable(cs, n);
  for (size_t i = 0; i < eb.size(); ++i) {
    Poly db = eb[i].derivative(var);
    if (db.is_zero()) continue;
    const LinExpS& exp = e.attached.factors[i].exponent;
    Poly coef = exp.s_coeff * s + Poly::constant(cs, exp.constant - Rational(e.mult[i]));
    Poly rest = Poly::constant(cs, Rational(1));
    for (size_t j = 0; j < eb.size(); ++j)
      if (j != i) rest *= eb[j];
    out_num += e.num * coef * db * rest;
  }
  FormalElement out{std::move(out_num), e.mult, e.attached};
  for (auto& m : out.mult) ++m;
  reduce(out);
  return out;
}

FormalElement formal_add(const FormalElement& a, const FormalElement& b) {
  if (!same_attached(a.attached, b.attached))
    throw ValueError("formal elements attached to different products");
  FormalElement out;
  out.attached = a.attached;
  out.mult.resize(a.mult.size());
  Poly lhs = a.num;
  Poly rhs = b.num;
  const std::vector<Poly> eb = embedded_bases(a);
  for (size_t i = 0; i < a.mult.size(); ++i) {
    out.mult[i] = std::max(a.mult[i], b.mult[i]);
    if (long d = out.mult[i] - a.mult[i]; d > 0) lhs *= eb[i].pow(static_cast<uint32_t>(d));
    if (long d = out.mult[i] - b.mult[i]; d > 0) rhs *= eb[i].pow(static_cast<uint32_t>(d));
  }
  out.num = lhs + rhs;
  reduce(out);
  return out;
}

bool formal_equal(const FormalElement& a, const FormalElement& b) {
  if (!same_attached(a.attached, b.attached)) return false;
  FormalElement x = a;
  FormalElement y = b;
  reduce(x);
  reduce(y);
  return x.mult == y.mult && x.num == y.num;
}

std::string formal_str(const FormalElement& e) {
  std::string out = "(" + e.num.str() + ")";
  for (size_t i = 0; i < e.attached.factors.size(); ++i) {
    const auto& f = e.attached.factors[i];
    LinExpS shown(f.exponent.s_coeff, f.exponent.constant - Rational(e.mult[i]));
    out += " * (" + f.base.str() + ")^(" + shown.str() + ")";
  }
  return out;
}

FormalElement apply_operator(const BFunctionProblem& p) {
  if (!p.base.ctx || p.op.ctx()->size() != p.base.ctx->size())
    throw ValueError("operator and base must use the same number of variables");
  FormalElement seed = formal_power_s_plus_1(p.base);
  std::map<std::vector<uint32_t>, FormalElement> cache;
  cache.emplace(std::vector<uint32_t>(p.op.ctx()->size(), 0), seed);
  std::function<const FormalElement&(const std::vector<uint32_t>&)> get =
      [&](const std::vector<uint32_t>& alpha) -> const FormalElement& {
    auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;
    size_t v = alpha.size();
    while (v > 0 && alpha[v - 1] == 0) --v;
    std::vector<uint32_t> parent = alpha;
    --parent[v - 1];
    FormalElement d = differentiate(get(parent), v - 1);
    return cache.emplace(alpha, std::move(d)).first->second;
  };
  FormalElement acc{Poly::zero(seed.num.ctx()),
                    std::vector<long>(seed.mult.size(), 0), seed.attached};
  for (const auto& t : p.op.terms()) {
    FormalElement part = get(t.m.e);
    part.num = t.c * part.num;
    acc = formal_add(acc, part);
  }
  reduce(acc);
  return acc;
}

BExtraction extract_b(const FormalElement& result, const PowerProduct& base) {
  BExtraction out;
  const auto fail = [&out](std::string w) {
    out.witness = std::move(w);
    return out;
  };
  if (result.attached.factors.size() != base.factors.size())
    return fail("attached product does not match the base");
  std::vector<long> e(base.factors.size(), 0);
  for (size_t i = 0; i < base.factors.size(); ++i) {
    const auto& bf = base.factors[i];
    if (!bf.exponent.is_constant() || !bf.exponent.constant.is_integer())
      return fail("base exponents must be integers");
    e[i] = bf.exponent.constant.numerator().get_si();
    if (!(result.attached.factors[i].base == bf.base))
      return fail("attached base " + std::to_string(i) + " differs from the given product");
    if (!(result.attached.factors[i].exponent == LinExpS(Rational(e[i]), Rational(e[i]))))
      return fail("attached exponent " + std::to_string(i) + " is not e*(s+1)");
  }
  const ContextPtr& cs = result.num.ctx();
  Poly num = result.num;
  Poly den = Poly::constant(cs, Rational(1));
  for (size_t i = 0; i < e.size(); ++i) {
    const long sigma = result.mult[i] - e[i];
    const Poly eb = base.factors[i].base.embed(cs);
    if (sigma < 0)
      num *= eb.pow(static_cast<uint32_t>(-sigma));
    else if (sigma > 0)
      den *= eb.pow(static_cast<uint32_t>(sigma));
  }
  auto q = num.exact_divide(den);
  if (!q) return fail("numerator is not an exact multiple of the residual base powers");
  const size_t n = base.ctx->size();
  for (size_t v = 0; v < n; ++v)
    if (q->uses(v))
      return fail("quotient still involves " + base.ctx->name(v) + ": " + q->str());
  out.b = q->rename(s_context(), std::vector<size_t>(n + 1, 0));
  out.ok = true;
  return out;
}

Poly predicted_b_polynomial(int r, int k) {
  if (r < 2 || k < 0) throw ValueError("need r >= 2 and k >= 0");
  const ContextPtr sc = s_context();
  const Poly s = Poly::variable(sc, 0);
  Poly b = Poly::constant(sc, Rational(1));
  for (int i = 1; i <= r - 1; ++i)
    b *= s + Poly::constant(sc, Rational(i, r - 1));
  const Rational tail =
      k == 0 ? Rational(r + 1, 2) : Rational(r + 1) * Rational(2).pow(k - 1);
  b *= s + Poly::constant(sc, tail);
  return b;
}

namespace {

PowerProduct invariant_power_base(const InvariantSet& inv, bool dual, const Rational& coeff) {
  const long corner = 2L * inv.r - 1L * inv.r * inv.r;
  std::vector<std::pair<Poly, long>> fac;
  fac.emplace_back(dual ? inv.Q1 : inv.P1, inv.r - 1);
  if (corner != 0) fac.emplace_back(dual ? inv.Q2 : inv.P2, corner);
  return make_power_product(dual ? inv.zctx : inv.yctx, coeff, fac);
}

}  // namespace

BFunctionReport b_function_check(int r) {
  BFunctionReport rep;
  const InvariantSet inv = invariants(r);
  const PowerProduct base = invariant_power_base(inv, false, Rational(1));
  // The operator normalization is the signed transform constant of the
  // dual-to-primal closed form; its magnitude is 1/(2^{ell2(r)+r-1} (r-1)^{r-1}).
  const MLReport ml = verify_ml_closed_form(r, MLDirection::QToP);
  if (!ml.ok()) {
    rep.predicted = predicted_b_polynomial(r, 0);
    rep.measured = Poly::zero(s_context());
    rep.note = "operator normalization unavailable: " + ml.note;
    return rep;
  }
  const BFunctionProblem prob{ml.constant * inv.Q1, base, predicted_b_polynomial(r, 0)};
  rep.predicted = prob.predicted;
  const BExtraction ext = extract_b(apply_operator(prob), base);
  if (!ext.ok) {
    rep.measured = Poly::zero(s_context());
    rep.note = ext.witness;
    return rep;
  }
  rep.measured = ext.b;
  rep.pass = rep.measured == rep.predicted;
  if (!rep.pass)
    rep.note = "measured " + factored_b_display(rep.measured) + " vs predicted " +
               factored_b_display(rep.predicted);
  return rep;
}

IdentityReport euler_check(int r) {
  IdentityReport rep;
  const InvariantSet inv = invariants(r);
  const PowerProduct base = invariant_power_base(inv, false, Rational(1));
  const FormalElement power = formal_power_s_plus_1(base);
  const ContextPtr& cs = power.num.ctx();
  FormalElement acc{Poly::zero(cs), std::vector<long>(power.mult.size(), 0), power.attached};
  for (int l = 0; l <= r; ++l) {
    FormalElement d = differentiate(power, static_cast<size_t>(l));
    d.num *= Poly::variable(cs, static_cast<size_t>(l));
    acc = formal_add(acc, d);
  }
  FormalElement expect = power;
  expect.num = Rational(r) * (Poly::variable(cs, static_cast<size_t>(r) + 1) +
                              Poly::constant(cs, Rational(1)));
  rep.tally(formal_equal(acc, expect),
            "euler identity failed at r=" + std::to_string(r) + ": " + formal_str(acc));
  return rep;
}

ContextPtr doubled_context(const ContextPtr& ctx) {
  const auto step = [](std::string name) {
    static const std::map<char, char> succ = {{'x', 'y'}, {'y', 'u'}, {'u', 'v'}, {'z', 'w'},
                                              {'w', 'q'}, {'v', 'p'}, {'q', 'o'}};
    const auto it = succ.find(name[0]);
    if (it == succ.end())
      throw ContextError("no successor block naming for '" + name + "'");
    name[0] = it->second;
    return name;
  };
  std::vector<std::string> block;
  block.reserve(ctx->size());
  for (const auto& n : ctx->names()) block.push_back(step(n));
  const auto collides = [&] {
    for (const auto& c : block)
      if (ctx->find(c)) return true;
    return false;
  };
  while (collides())
    for (auto& c : block) c = step(c);
  std::vector<std::string> names = ctx->names();
  names.insert(names.end(), block.begin(), block.end());
  return VariableContext::make(std::move(names));
}

Poly polarize(const Poly& f) {
  const ContextPtr dbl = doubled_context(f.ctx());
  const size_t n = f.ctx()->size();
  Poly out = f.embed(dbl);
  for (size_t i = 0; i < n; ++i) {
    const Poly df = f.derivative(i);
    if (df.is_zero()) continue;
    out += df.embed(dbl) * Poly::variable(dbl, n + i);
  }
  return out;
}

PowerProduct ml_polarization(const PowerProduct& fstar, int d) {
  if (d < 1) throw ValueError("polarization needs degree d >= 1");
  const ContextPtr dbl = doubled_context(fstar.ctx);
  const size_t n = fstar.ctx->size();
  std::vector<size_t> shift(n);
  std::iota(shift.begin(), shift.end(), n);
  std::vector<Poly> bnew;
  std::vector<long> exps;
  Poly prod_all = Poly::constant(dbl, Rational(1));
  for (const auto& f : fstar.factors) {
    if (!f.exponent.is_constant() || !f.exponent.constant.is_integer())
      throw ValueError("polarization needs integer base exponents");
    exps.push_back(f.exponent.constant.numerator().get_si());
    bnew.push_back(f.base.rename(dbl, shift));
    prod_all *= bnew.back();
  }
  Poly bracket = -prod_all;
  for (size_t j = 0; j < bnew.size(); ++j) {
    Poly pairing = Poly::zero(dbl);
    for (size_t i = 0; i < n; ++i) {
      const Poly db = bnew[j].derivative(n + i);
      if (!db.is_zero()) pairing += db * Poly::variable(dbl, i);
    }
    Poly rest = Poly::constant(dbl, Rational(1));
    for (size_t l = 0; l < bnew.size(); ++l)
      if (l != j) rest *= bnew[l];
    bracket += Rational(exps[j]) * (pairing * rest);
  }
  PowerProduct out;
  out.ctx = dbl;
  out.coeff = fstar.coeff * Rational(d - 1).pow(1 - static_cast<long>(d));
  if (d > 1) {
    if (bracket.is_constant())
      out.coeff *= bracket.constant_value().pow(d - 1);
    else
      out.factors.push_back({bracket, LinExpS::of_int(d - 1)});
  }
  for (size_t j = 0; j < bnew.size(); ++j) {
    const long e = exps[j] - (d - 1);
    if (e != 0) out.factors.push_back({bnew[j], LinExpS::of_int(e)});
  }
  return out;
}

Rational evaluate_power_product(const PowerProduct& pp, const std::vector<Rational>& pt) {
  Rational v = pp.coeff;
  for (const auto& f : pp.factors) {
    if (!f.exponent.is_constant() || !f.exponent.constant.is_integer())
      throw ValueError("evaluation needs integer exponents");
    v *= f.base.evaluate(pt).pow(f.exponent.constant.numerator().get_si());
  }
  return v;
}

PointwiseMLReport ml_pointwise_product_check(const Poly& F, const PowerProduct& Fstar,
                                             int samples, uint64_t seed) {
  PointwiseMLReport out;
  const size_t n = F.ctx()->size();
  if (Fstar.ctx->size() != n)
    throw ValueError("polynomial and transform must use the same number of variables");
  SplitMix64 rng(seed);
  std::vector<Poly> grad;
  grad.reserve(n);
  for (size_t i = 0; i < n; ++i) grad.push_back(F.derivative(i));
  int found = 0;
  for (long tries = 0; found < samples && tries < 20000; ++tries) {
    std::vector<Rational> pt;
    pt.reserve(n);
    for (size_t i = 0; i < n; ++i) pt.push_back(random_rational(rng, 4, 3));
    const Rational fv = F.evaluate(pt);
    if (fv.is_zero()) continue;
    std::vector<Rational> z(n);
    for (size_t i = 0; i < n; ++i) z[i] = grad[i].evaluate(pt) / fv;
    bool regular = true;
    for (const auto& fac : Fstar.factors)
      if (fac.base.evaluate(z).is_zero()) {
        regular = false;
        break;
      }
    if (!regular) continue;
    const Rational prod = evaluate_power_product(Fstar, z) * fv;
    if (!out.constant_found) {
      out.constant = prod;
      out.constant_found = true;
    }
    out.details.tally(prod == out.constant, "sample " + std::to_string(found) + " product " +
                                                prod.str() + " differs from " +
                                                out.constant.str());
    ++found;
  }
  if (found < samples)
    out.details.tally(false, "exhausted sampling attempts before reaching " +
                                 std::to_string(samples) + " regular points");
  return out;
}

BFunctionReport polarized_b_function_check(int r, int k) {
  if (k < 0) throw ValueError("need k >= 0");
  BFunctionReport rep;
  rep.predicted = predicted_b_polynomial(r, k);
  rep.measured = Poly::zero(s_context());
  const InvariantSet inv = invariants(r);
  const MLReport ml = verify_ml_closed_form(r, MLDirection::PToQ);
  if (!ml.ok()) {
    rep.unsupported = true;
    rep.note = "transform constant unavailable: " + ml.note;
    return rep;
  }
  Poly op = inv.P1;
  PowerProduct base = invariant_power_base(inv, true, ml.constant);
  for (int i = 0; i < k; ++i) {
    op = polarize(op);
    base = ml_polarization(base, r);
  }
  const Rational scalar = base.coeff;
  base.coeff = Rational(1);
  const BFunctionProblem prob{op, base, rep.predicted};
  const BExtraction ext = extract_b(apply_operator(prob), base);
  if (!ext.ok) {
    rep.unsupported = true;
    rep.note = "result is not b(s) times the base power: " + ext.witness;
    return rep;
  }
  rep.measured = scalar * ext.b;
  rep.pass = rep.measured == rep.predicted;
  if (!rep.pass)
    rep.note = "measured " + factored_b_display(rep.measured) + " vs predicted " +
               factored_b_display(rep.predicted);
  return rep;
}

std::string factored_b_display(const Poly& b) {
  if (b.ctx()->size() != 1) throw ValueError("expected a univariate polynomial");
  if (b.is_zero()) return "0";
  std::vector<Rational> c(b.degree_in(0) + 1, Rational(0));
  for (const auto& t : b.terms()) c[t.m.e[0]] = t.c;
  std::vector<Rational> shifts;  // factor (s + shift)
  bool found = true;
  while (c.size() > 1 && found) {
    found = false;
    for (long num = 0; num <= 64 && !found; ++num)
      for (long den = 1; den <= 12 && !found; ++den) {
        if (std::gcd(num, den) != 1) continue;
        for (int sg : {1, -1}) {
          if (num == 0 && sg < 0) continue;
          const Rational root(sg * num, den);
          std::vector<Rational> q(c.size() - 1, Rational(0));
          Rational carry = c.back();
          for (size_t i = c.size() - 1; i-- > 0;) {
            q[i] = carry;
            carry = c[i] + root * carry;
          }
          if (carry.is_zero()) {
            shifts.push_back(-root);
            c = std::move(q);
            found = true;
            break;
          }
        }
      }
  }
  std::sort(shifts.begin(), shifts.end(),
            [](const Rational& a, const Rational& b) { return (a - b).sign() < 0; });
  std::string out;
  if (c.size() == 1) {
    if (shifts.empty())
      out = c[0].str();
    else if (!c[0].is_one())
      out = c[0].str() + " ";
  }
  for (const auto& a : shifts) {
    if (a.is_zero())
      out += "s";
    else
      out += "(s " + std::string(a.sign() > 0 ? "+" : "-") + " " + a.abs().str() + ")";
  }
  if (c.size() > 1) {
    const ContextPtr sc = b.ctx();
    Poly residual = Poly::zero(sc);
    for (size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero())
        residual += Poly::term(sc, {static_cast<uint32_t>(i)}, c[i]);
    out += (out.empty() ? "" : " * ") + ("(" + residual.str() + ")");
  }
  return out;
}

}  // namespace shk
