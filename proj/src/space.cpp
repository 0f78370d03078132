#include "shk/space.hpp"

namespace shk {

namespace {

RationalMatrix zero_matrix(int r) { return RationalMatrix(static_cast<size_t>(r), static_cast<size_t>(r)); }

std::string rs(const Rational& v) { return v.str(); }

}  // namespace

long ell2(long r) {
  long total = 0;
  for (long p = 2; p <= r; p *= 2) total += r / p;
  return total;
}

GeneratorSet generators(int r) {
  if (r < 2) throw SizeError("size must be at least 2");
  GeneratorSet g;
  g.r = r;
  g.Y.reserve(r + 1);
  for (int l = 1; l <= r + 1; ++l) {
    RationalMatrix m = zero_matrix(r);
    for (int i = 1; i <= r; ++i) {
      int j = l + 1 - i;
      if (j >= 1 && j <= r) m.at(i - 1, j - 1) = Rational(1);
    }
    g.Y.push_back(std::move(m));
  }
  g.T.reserve(r);
  for (int k = 0; k <= r - 1; ++k) {
    RationalMatrix m = zero_matrix(r);
    for (int i = 1; i + k <= r; ++i) m.at(i - 1, i - 1 + k) = Rational(r - k - (i - 1));
    g.T.push_back(std::move(m));
  }
  g.H1 = zero_matrix(r);
  g.H2 = zero_matrix(r);
  for (int j = 1; j <= r; ++j) {
    g.H1.at(j - 1, j - 1) = Rational(1, 2) - Rational(j - 1, r);
    g.H2.at(j - 1, j - 1) = Rational(j - 1, r);
  }
  return g;
}

std::vector<std::pair<std::string, LieElement>> generator_elements(int r) {
  if (r < 2) throw SizeError("size must be at least 2");
  std::vector<std::pair<std::string, LieElement>> out;
  LieElement h1;
  h1.h1 = Rational(1);
  out.emplace_back("H1", h1);
  LieElement h2;
  h2.h2 = Rational(1);
  out.emplace_back("H2", h2);
  for (int k = 1; k <= r - 1; ++k) {
    LieElement tk;
    tk.t.assign(r - 1, Rational(0));
    tk.t[k - 1] = Rational(1);
    out.emplace_back("T" + std::to_string(k), tk);
  }
  return out;
}

RationalMatrix lie_matrix(const GeneratorSet& gen, const LieElement& X) {
  RationalMatrix m = zero_matrix(gen.r);
  if (!X.h1.is_zero()) m = m + X.h1 * gen.H1;
  if (!X.h2.is_zero()) m = m + X.h2 * gen.H2;
  for (size_t k = 1; k <= X.t.size(); ++k) {
    if (static_cast<int>(k) > gen.r - 1) throw SizeError("too many superdiagonal coefficients");
    if (!X.t[k - 1].is_zero()) m = m + X.t[k - 1] * gen.T[k];
  }
  return m;
}

PolyMatrix build_subhankel_matrix(int r) {
  if (r < 2) throw SizeError("size must be at least 2");
  auto ctx = VariableContext::numbered("y", r + 1);
  PolyMatrix m(ctx, r, r);
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j)
      if (i + j <= r + 2) m.at(i - 1, j - 1) = Poly::variable(ctx, i + j - 2);
  return m;
}

RationalMatrix coordinate_matrix(int r, const std::vector<Rational>& y) {
  if (r < 2) throw SizeError("size must be at least 2");
  if (y.size() != static_cast<size_t>(r + 1)) throw ValueError("expected r+1 coordinates");
  RationalMatrix m = zero_matrix(r);
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j)
      if (i + j <= r + 2) m.at(i - 1, j - 1) = y[i + j - 2];
  return m;
}

std::vector<Rational> coords_from_matrix(const RationalMatrix& m) {
  const size_t r = m.rows();
  if (m.cols() != r || r < 2) throw ValueError("expected a square matrix of size at least 2");
  std::vector<Rational> y(r + 1, Rational(0));
  std::vector<bool> seen(r + 2, false);
  for (size_t i = 1; i <= r; ++i)
    for (size_t j = 1; j <= r; ++j) {
      const Rational& v = m.at(i - 1, j - 1);
      const size_t l = i + j - 1;
      if (l > r + 1) {
        if (!v.is_zero()) throw ValueError("matrix leaves the sub-Hankel pattern");
        continue;
      }
      if (!seen[l]) {
        y[l - 1] = v;
        seen[l] = true;
      } else if (y[l - 1] != v) {
        throw ValueError("matrix leaves the sub-Hankel pattern");
      }
    }
  return y;
}

RationalMatrix drho_matrix(const GeneratorSet& gen, const LieElement& X) {
  const int r = gen.r;
  RationalMatrix xm = lie_matrix(gen, X);
  RationalMatrix xt = xm.transpose();
  RationalMatrix out(r + 1, r + 1);
  for (int l = 1; l <= r + 1; ++l) {
    auto col = coords_from_matrix(xm * gen.Y[l - 1] + gen.Y[l - 1] * xt);
    for (int m = 1; m <= r + 1; ++m) out.at(m - 1, l - 1) = col[m - 1];
  }
  return out;
}

RationalMatrix drho_dual_matrix(const GeneratorSet& gen, const LieElement& X) {
  return Rational(-1) * drho_matrix(gen, X).transpose();
}

std::vector<Rational> drho(const GeneratorSet& gen, const LieElement& X,
                           const std::vector<Rational>& y) {
  return drho_matrix(gen, X).apply(y);
}

std::vector<Rational> drho_dual(const GeneratorSet& gen, const LieElement& X,
                                const std::vector<Rational>& z) {
  return drho_dual_matrix(gen, X).apply(z);
}

GroupElement group_element(int r, const Rational& p, const Rational& q,
                           const std::vector<Rational>& t) {
  if (r < 2) throw SizeError("size must be at least 2");
  if (p.sign() <= 0 || q.sign() <= 0) throw ValueError("diagonal parameters must be positive");
  if (t.size() != static_cast<size_t>(r - 1)) throw ValueError("expected r-1 shear parameters");
  GeneratorSet gen = generators(r);
  RationalMatrix n = zero_matrix(r);
  for (int k = 1; k <= r - 1; ++k)
    if (!t[k - 1].is_zero()) n = n + t[k - 1] * gen.T[k];
  // n is strictly upper triangular, so the exponential series stops at r-1.
  RationalMatrix expn = RationalMatrix::identity(r);
  RationalMatrix pw = RationalMatrix::identity(r);
  Rational fact(1);
  for (int m = 1; m <= r - 1; ++m) {
    pw = pw * n;
    if (pw.is_zero()) break;
    fact *= Rational(m);
    expn = expn + fact.inverse() * pw;
  }
  RationalMatrix a = zero_matrix(r);
  for (int j = 1; j <= r; ++j)
    a.at(j - 1, j - 1) = q.pow(r - 2 * (j - 1)) * p.pow(j - 1);
  GroupElement g;
  g.r = r;
  g.matrix = expn * a;
  g.a1 = q.pow(2 * r);
  g.a2 = p.pow(r);
  return g;
}

Rational character_value(const GroupElement& g, const CharacterWeight& w) {
  if (!w.s1.is_integer() || !w.s2.is_integer())
    throw ValueError("character weight must be an integer pair");
  return g.a1.pow(w.s1.numerator().get_si()) * g.a2.pow(w.s2.numerator().get_si());
}

std::vector<Rational> act_y(const GroupElement& g, const std::vector<Rational>& y) {
  RationalMatrix m = coordinate_matrix(g.r, y);
  return coords_from_matrix(g.matrix * m * g.matrix.transpose());
}

std::vector<Rational> act_z(const GroupElement& g, const std::vector<Rational>& z) {
  if (z.size() != static_cast<size_t>(g.r + 1)) throw ValueError("expected r+1 coordinates");
  const int r = g.r;
  RationalMatrix ginv = g.matrix.inverse();
  RationalMatrix ginvt = ginv.transpose();
  GeneratorSet gen = generators(r);
  // S is the coordinate matrix of y -> g^{-1} M(y) g^{-t}; the dual action
  // is its transpose.
  RationalMatrix s(r + 1, r + 1);
  for (int l = 1; l <= r + 1; ++l) {
    auto col = coords_from_matrix(ginv * gen.Y[l - 1] * ginvt);
    for (int m = 1; m <= r + 1; ++m) s.at(m - 1, l - 1) = col[m - 1];
  }
  return s.transpose().apply(z);
}

InvariantSet invariants(int r) {
  if (r < 2) throw SizeError("size must be at least 2");
  InvariantSet inv;
  inv.r = r;
  inv.yctx = VariableContext::numbered("y", r + 1);
  inv.zctx = VariableContext::numbered("z", r + 1);
  inv.P1 = build_subhankel_matrix(r).determinant();
  inv.P2 = Poly::variable(inv.yctx, r);
  inv.Q2 = Poly::variable(inv.zctx, 0);

  GeneratorSet gen = generators(r);
  PolyMatrix rm(inv.zctx, r, r);
  for (int j = 1; j <= r; ++j) {
    LieElement x;
    if (j < r) {
      x.t.assign(r - 1, Rational(0));
      x.t[(r - j) - 1] = Rational(1);
    } else {
      x.h2 = Rational(r);
    }
    RationalMatrix d = drho_dual_matrix(gen, x);
    for (int i = 1; i <= r; ++i) {
      // Row i reads off the coefficient along -Y*_{i+1}.
      Poly entry = Poly::zero(inv.zctx);
      for (int m = 1; m <= r + 1; ++m) {
        const Rational& c = d.at(i, m - 1);
        if (!c.is_zero()) entry += (-c) * Poly::variable(inv.zctx, m - 1);
      }
      rm.at(i - 1, j - 1) = entry;
    }
  }
  Rational fact(1);
  for (int m = 2; m <= r; ++m) fact *= Rational(m);
  Rational pre = Rational(2).pow(ell2(r)) / fact;
  if (r % 2 == 0) pre = -pre;
  inv.q1_prefactor = pre;
  inv.Q1 = pre * rm.determinant();

  inv.wP1 = {Rational(1), Rational(r - 1)};
  inv.wP2 = {Rational(0), Rational(1)};
  inv.wQ1 = {Rational(1 - r), Rational(-1)};
  inv.wQ2 = {Rational(-1), Rational(0)};
  return inv;
}

IdentityReport verify_structure_relations(int r) {
  IdentityReport rep;
  GeneratorSet g = generators(r);
  const RationalMatrix zero = zero_matrix(r);
  for (int k = 0; k <= r - 1; ++k)
    for (int kp = 0; kp <= r - 1; ++kp) {
      RationalMatrix lhs = commutator(g.T[k], g.T[kp]);
      RationalMatrix rhs = (k + kp <= r - 1) ? Rational(kp - k) * g.T[k + kp] : zero;
      rep.tally(lhs == rhs,
                "[T" + std::to_string(k) + ",T" + std::to_string(kp) + "] at r=" + std::to_string(r));
    }
  for (int k = 0; k <= r - 1; ++k) {
    RationalMatrix tk = g.T[k];
    RationalMatrix tkt = tk.transpose();
    for (int l = 1; l <= r + 1; ++l) {
      RationalMatrix lhs = tk * g.Y[l - 1] + g.Y[l - 1] * tkt;
      RationalMatrix rhs = (l - k >= 1) ? Rational(2 * r + 1 - k - l) * g.Y[l - k - 1] : zero;
      rep.tally(lhs == rhs,
                "T" + std::to_string(k) + " on Y" + std::to_string(l) + " at r=" + std::to_string(r));
    }
  }
  for (int k = 1; k <= r - 1; ++k) {
    rep.tally(commutator(g.H1, g.T[k]) == Rational(k, r) * g.T[k],
              "[H1,T" + std::to_string(k) + "] at r=" + std::to_string(r));
    rep.tally(commutator(g.H2, g.T[k]) == Rational(-k, r) * g.T[k],
              "[H2,T" + std::to_string(k) + "] at r=" + std::to_string(r));
  }
  for (int l = 1; l <= r + 1; ++l) {
    rep.tally(g.H1 * g.Y[l - 1] + g.Y[l - 1] * g.H1 == Rational(r + 1 - l, r) * g.Y[l - 1],
              "H1 on Y" + std::to_string(l) + " at r=" + std::to_string(r));
    rep.tally(g.H2 * g.Y[l - 1] + g.Y[l - 1] * g.H2 == Rational(l - 1, r) * g.Y[l - 1],
              "H2 on Y" + std::to_string(l) + " at r=" + std::to_string(r));
  }
  rep.tally(commutator(g.H1, g.H2) == zero, "[H1,H2] at r=" + std::to_string(r));
  return rep;
}

IdentityReport verify_infinitesimal_invariance(const Poly& P, const CharacterWeight& w, Side side) {
  IdentityReport rep;
  const int r = static_cast<int>(P.ctx()->size()) - 1;
  GeneratorSet gen = generators(r);
  const ContextPtr& ctx = P.ctx();
  for (const auto& [name, x] : generator_elements(r)) {
    RationalMatrix a = (side == Side::Y) ? drho_matrix(gen, x) : drho_dual_matrix(gen, x);
    Poly lhs = Poly::zero(ctx);
    for (int m = 0; m <= r; ++m) {
      Poly dm = P.derivative(m);
      if (dm.is_zero()) continue;
      Poly lin = Poly::zero(ctx);
      for (int j = 0; j <= r; ++j) {
        const Rational& c = a.at(m, j);
        if (!c.is_zero()) lin += c * Poly::variable(ctx, j);
      }
      lhs += dm * lin;
    }
    Rational dnu = w.s1 * x.h1 + w.s2 * x.h2;
    rep.tally(lhs == dnu * P, "directional derivative along " + name + " at r=" + std::to_string(r));
  }
  return rep;
}

IdentityReport verify_determinant_characters(int r) {
  IdentityReport rep;
  GeneratorSet gen = generators(r);
  for (const auto& [name, x] : generator_elements(r)) {
    RationalMatrix d = drho_dual_matrix(gen, x);
    bool invariant = true;
    for (int j = 1; j <= r; ++j)
      if (!d.at(0, j).is_zero()) invariant = false;
    rep.tally(invariant, "dual action of " + name + " keeps the z1=0 subspace, r=" + std::to_string(r));
    Rational tr(0);
    for (int i = 1; i <= r; ++i) tr += d.at(i, i);
    Rational expected = Rational(-(r - 1), 2) * x.h1 + Rational(-(r + 1), 2) * x.h2;
    rep.tally(tr == expected, "dual restricted trace for " + name + ", r=" + std::to_string(r));
  }

  // The complementary algebra basis: T_{r-1}, ..., T_1, r*H2.
  std::vector<RationalMatrix> basis;
  for (int k = r - 1; k >= 1; --k) basis.push_back(gen.T[k]);
  basis.push_back(Rational(r) * gen.H2);
  for (const auto& [name, x] : generator_elements(r)) {
    RationalMatrix xm = lie_matrix(gen, x);
    Rational tr(0);
    bool closed = true;
    for (size_t b = 0; b < basis.size(); ++b) {
      RationalMatrix c = commutator(xm, basis[b]);
      // Expansion coefficients: T_k is pinned by its (1, 1+k) entry, H2 by
      // its (2,2) entry; reconstruction guards against anything outside the
      // span of T_1..T_{r-1}, H2.
      std::vector<Rational> ck(r, Rational(0));
      for (int k = 1; k <= r - 1; ++k) ck[k] = c.at(0, k) / Rational(r - k);
      Rational ch = c.at(1, 1) * Rational(r);
      RationalMatrix rebuilt = ch * gen.H2;
      for (int k = 1; k <= r - 1; ++k)
        if (!ck[k].is_zero()) rebuilt = rebuilt + ck[k] * gen.T[k];
      if (!(rebuilt == c)) closed = false;
      // Diagonal coefficient of the bracket along the basis element itself.
      if (b + 1 < basis.size())
        tr += ck[r - 1 - b];
      else
        tr += ch / Rational(r);
    }
    rep.tally(closed, "bracket with " + name + " stays in the complementary algebra, r=" + std::to_string(r));
    Rational expected = Rational(r - 1, 2) * x.h1 - Rational(r - 1, 2) * x.h2;
    rep.tally(tr == expected, "adjoint trace for " + name + ", r=" + std::to_string(r));
  }
  return rep;
}

std::vector<Rational> sample_nonvanishing(SplitMix64& rng, const std::vector<const Poly*>& avoid,
                                          size_t dim) {
  for (int tries = 0; tries < 4096; ++tries) {
    std::vector<Rational> pt;
    pt.reserve(dim);
    for (size_t i = 0; i < dim; ++i) pt.push_back(random_rational(rng, 4, 3));
    bool ok = true;
    for (const Poly* p : avoid)
      if (p->evaluate(pt).is_zero()) {
        ok = false;
        break;
      }
    if (ok) return pt;
  }
  throw ValueError("rejection sampling failed to find a non-singular point");
}

IdentityReport verify_group_invariance(int r, int samples, uint64_t seed) {
  IdentityReport rep;
  InvariantSet inv = invariants(r);
  SplitMix64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    Rational p = random_positive_rational(rng, 4, 3);
    Rational q = random_positive_rational(rng, 4, 3);
    std::vector<Rational> t;
    for (int k = 1; k <= r - 1; ++k) t.push_back(random_rational(rng, 3, 2));
    GroupElement g = group_element(r, p, q, t);
    std::vector<Rational> y = sample_nonvanishing(rng, {&inv.P1, &inv.P2}, r + 1);
    std::vector<Rational> z = sample_nonvanishing(rng, {&inv.Q1, &inv.Q2}, r + 1);
    std::vector<Rational> gy = act_y(g, y);
    std::vector<Rational> gz = act_z(g, z);
    const std::string tag = " at r=" + std::to_string(r) + ", sample " + std::to_string(s) +
                            " (p=" + rs(p) + ", q=" + rs(q) + ")";
    rep.tally(inv.P1.evaluate(gy) == character_value(g, inv.wP1) * inv.P1.evaluate(y),
              "degree-r invariant on the primal side" + tag);
    rep.tally(inv.P2.evaluate(gy) == character_value(g, inv.wP2) * inv.P2.evaluate(y),
              "corner coordinate invariant" + tag);
    rep.tally(inv.Q1.evaluate(gz) == character_value(g, inv.wQ1) * inv.Q1.evaluate(z),
              "degree-r invariant on the dual side" + tag);
    rep.tally(inv.Q2.evaluate(gz) == character_value(g, inv.wQ2) * inv.Q2.evaluate(z),
              "first dual coordinate invariant" + tag);
  }
  return rep;
}

}  // namespace shk
