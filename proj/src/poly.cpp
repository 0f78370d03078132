#include "shk/poly.hpp"

#include <algorithm>
#include <unordered_map>

namespace shk {

Monomial Monomial::of(std::vector<uint32_t> exps) {
  Monomial m{std::move(exps), 0};
  for (uint32_t x : m.e) m.total += x;
  return m;
}

Monomial Monomial::times(const Monomial& o) const {
  Monomial out{e, total + o.total};
  for (size_t i = 0; i < e.size(); ++i) out.e[i] += o.e[i];
  return out;
}

bool Monomial::divides(const Monomial& o) const {
  if (total > o.total) return false;
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::divide_into(const Monomial& o) const {
  Monomial out{o.e, o.total - total};
  for (size_t i = 0; i < e.size(); ++i) out.e[i] -= e[i];
  return out;
}

bool grlex_greater(const Monomial& a, const Monomial& b) {
  if (a.total != b.total) return a.total > b.total;
  for (size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  return false;
}

Poly Poly::constant(ContextPtr ctx, Rational c) {
  if (c.is_zero()) return zero(std::move(ctx));
  Monomial m = Monomial::unit(ctx->size());
  return Poly(std::move(ctx), {Term{std::move(m), std::move(c)}});
}

Poly Poly::variable(const ContextPtr& ctx, size_t var) {
  if (var >= ctx->size()) throw ValueError("variable index out of range");
  std::vector<uint32_t> e(ctx->size(), 0);
  e[var] = 1;
  return Poly(ctx, {Term{Monomial::of(std::move(e)), Rational(1)}});
}

Poly Poly::term(const ContextPtr& ctx, std::vector<uint32_t> exps, Rational c) {
  if (exps.size() != ctx->size()) throw ValueError("exponent vector size mismatch");
  if (c.is_zero()) return zero(ctx);
  return Poly(ctx, {Term{Monomial::of(std::move(exps)), std::move(c)}});
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].m.is_unit()) return terms_[0].c;
  throw ValueError("polynomial is not constant");
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const uint32_t d = terms_.front().m.total;
  for (const Term& t : terms_)
    if (t.m.total != d) return false;
  return true;
}

uint32_t Poly::degree_in(size_t var) const {
  uint32_t d = 0;
  for (const Term& t : terms_) d = std::max(d, t.m.e.at(var));
  return d;
}

const Poly::Term& Poly::leading_term() const {
  if (terms_.empty()) throw ValueError("zero polynomial has no leading term");
  return terms_.front();
}

Poly Poly::from_unsorted(ContextPtr ctx, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.m, b.m); });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (Term& t : terms) {
    if (!out.empty() && out.back().m == t.m)
      out.back().c += t.c;
    else
      out.push_back(std::move(t));
    if (!out.empty() && out.back().c.is_zero()) out.pop_back();
  }
  return Poly(std::move(ctx), std::move(out));
}

void Poly::align(const Poly& a, const Poly& b, Poly& ea, Poly& eb) {
  if (!a.ctx_ || !b.ctx_) throw ValueError("operation on polynomial without context");
  if (VariableContext::equal(a.ctx_, b.ctx_)) {
    ea = a;
    eb = b;
    if (!(a.ctx_ == b.ctx_)) eb.ctx_ = a.ctx_;
    return;
  }
  ContextPtr merged = VariableContext::merge(a.ctx_, b.ctx_);
  ea = a.embed(merged);
  eb = b.embed(merged);
}

Poly Poly::operator-() const {
  std::vector<Term> out = terms_;
  for (Term& t : out) t.c = -t.c;
  return Poly(ctx_, std::move(out));
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly ea, eb;
  Poly::align(a, b, ea, eb);
  std::vector<Poly::Term> out;
  out.reserve(ea.terms_.size() + eb.terms_.size());
  size_t i = 0, j = 0;
  while (i < ea.terms_.size() || j < eb.terms_.size()) {
    if (j == eb.terms_.size() ||
        (i < ea.terms_.size() && grlex_greater(ea.terms_[i].m, eb.terms_[j].m))) {
      out.push_back(ea.terms_[i++]);
    } else if (i == ea.terms_.size() || grlex_greater(eb.terms_[j].m, ea.terms_[i].m)) {
      out.push_back(eb.terms_[j++]);
    } else {
      Rational c = ea.terms_[i].c + eb.terms_[j].c;
      if (!c.is_zero()) out.push_back(Poly::Term{ea.terms_[i].m, std::move(c)});
      ++i;
      ++j;
    }
  }
  return Poly(ea.ctx_, std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  Poly ea, eb;
  Poly::align(a, b, ea, eb);
  if (ea.is_zero() || eb.is_zero()) return Poly::zero(ea.ctx_);
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(ea.terms_.size() * 2);
  for (const auto& ta : ea.terms_)
    for (const auto& tb : eb.terms_) {
      Monomial m = ta.m.times(tb.m);
      acc.emplace(m, Rational(0)).first->second += ta.c * tb.c;
    }
  std::vector<Poly::Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) out.push_back(Poly::Term{m, std::move(c)});
  std::sort(out.begin(), out.end(),
            [](const Poly::Term& x, const Poly::Term& y) { return grlex_greater(x.m, y.m); });
  return Poly(ea.ctx_, std::move(out));
}

Poly operator*(const Rational& c, const Poly& p) {
  if (c.is_zero()) return Poly::zero(p.ctx_);
  std::vector<Poly::Term> out = p.terms_;
  for (auto& t : out) t.c *= c;
  return Poly(p.ctx_, std::move(out));
}

bool Poly::operator==(const Poly& o) const {
  Poly ea, eb;
  align(*this, o, ea, eb);
  if (ea.terms_.size() != eb.terms_.size()) return false;
  for (size_t i = 0; i < ea.terms_.size(); ++i)
    if (!(ea.terms_[i].m == eb.terms_[i].m) || ea.terms_[i].c != eb.terms_[i].c) return false;
  return true;
}

Poly Poly::pow(uint32_t e) const {
  if (!ctx_) throw ValueError("operation on polynomial without context");
  Poly result = Poly::constant(ctx_, Rational(1));
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(size_t var) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    uint32_t e = t.m.e.at(var);
    if (e == 0) continue;
    Monomial m = t.m;
    m.e[var] -= 1;
    m.total -= 1;
    out.push_back(Term{std::move(m), Rational(static_cast<long>(e)) * t.c});
  }
  // Subtracting one from the same coordinate keeps grlex order between the
  // surviving terms, so the result is already canonical.
  return Poly(ctx_, std::move(out));
}

std::optional<Poly> Poly::exact_divide(const Poly& divisor) const {
  if (divisor.is_zero()) throw ValueError("division by zero polynomial");
  Poly rem, div;
  align(*this, divisor, rem, div);
  std::vector<Term> quot;
  const Term& dlt = div.terms_.front();
  while (!rem.is_zero()) {
    const Term& rlt = rem.terms_.front();
    if (!dlt.m.divides(rlt.m)) return std::nullopt;
    Term t{dlt.m.divide_into(rlt.m), rlt.c / dlt.c};
    Poly tp(rem.ctx_, {t});
    rem = rem - tp * div;
    quot.push_back(std::move(t));
  }
  return from_unsorted(rem.ctx_ ? rem.ctx_ : ctx_, std::move(quot));
}

Poly Poly::substitute_all(const std::vector<Poly>& images) const {
  if (images.size() != ctx_->size()) throw ValueError("one image per variable required");
  ContextPtr target = images.empty() ? ctx_ : images.front().ctx();
  for (const Poly& im : images)
    if (!VariableContext::equal(im.ctx(), target))
      throw ContextError("substitution images must share one context");
  // Power cache per variable, built to the largest exponent needed.
  std::vector<std::vector<Poly>> powers(images.size());
  for (size_t v = 0; v < images.size(); ++v) {
    uint32_t maxe = degree_in(v);
    powers[v].reserve(maxe + 1);
    powers[v].push_back(Poly::constant(target, Rational(1)));
    for (uint32_t k = 1; k <= maxe; ++k) powers[v].push_back(powers[v].back() * images[v]);
  }
  Poly acc = Poly::zero(target);
  for (const Term& t : terms_) {
    Poly prod = Poly::constant(target, t.c);
    for (size_t v = 0; v < images.size(); ++v)
      if (t.m.e[v] > 0) prod = prod * powers[v][t.m.e[v]];
    acc = acc + prod;
  }
  return acc;
}

Rational Poly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != ctx_->size()) throw ValueError("one value per variable required");
  std::vector<std::vector<Rational>> powers(point.size());
  for (size_t v = 0; v < point.size(); ++v) {
    uint32_t maxe = degree_in(v);
    powers[v].reserve(maxe + 1);
    powers[v].push_back(Rational(1));
    for (uint32_t k = 1; k <= maxe; ++k) powers[v].push_back(powers[v].back() * point[v]);
  }
  Rational acc(0);
  for (const Term& t : terms_) {
    Rational prod = t.c;
    for (size_t v = 0; v < point.size(); ++v)
      if (t.m.e[v] > 0) prod *= powers[v][t.m.e[v]];
    acc += prod;
  }
  return acc;
}

Poly Poly::embed(const ContextPtr& target) const {
  if (VariableContext::equal(ctx_, target)) {
    Poly p = *this;
    p.ctx_ = target;
    return p;
  }
  std::vector<size_t> map(ctx_->size());
  for (size_t i = 0; i < ctx_->size(); ++i) {
    auto pos = target->find(ctx_->name(i));
    if (!pos) throw ContextError("target context lacks variable '" + ctx_->name(i) + "'");
    map[i] = *pos;
  }
  return rename(target, map);
}

Poly Poly::rename(const ContextPtr& target, const std::vector<size_t>& map) const {
  if (map.size() != ctx_->size()) throw ValueError("rename map size mismatch");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    std::vector<uint32_t> e(target->size(), 0);
    for (size_t i = 0; i < map.size(); ++i) {
      if (map[i] >= target->size()) throw ValueError("rename target index out of range");
      e[map[i]] += t.m.e[i];
    }
    out.push_back(Term{Monomial::of(std::move(e)), t.c});
  }
  return from_unsorted(target, std::move(out));
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : terms_) {
    const bool neg = t.c.sign() < 0;
    const Rational mag = neg ? -t.c : t.c;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    std::string vars;
    for (size_t v = 0; v < t.m.e.size(); ++v) {
      if (t.m.e[v] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += ctx_->name(v);
      if (t.m.e[v] > 1) vars += "^" + std::to_string(t.m.e[v]);
    }
    if (vars.empty()) {
      out += mag.str();
    } else if (mag.is_one()) {
      out += vars;
    } else {
      out += mag.str() + "*" + vars;
    }
  }
  return out;
}

}  // namespace shk
