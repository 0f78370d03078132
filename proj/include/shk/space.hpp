#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shk/matrix.hpp"
#include "shk/poly.hpp"
#include "shk/report.hpp"
#include "shk/rng.hpp"

namespace shk {

struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The coordinate space has dimension r+1: points are (y1..y_{r+1}) on the
// primal side and (z1..z_{r+1}) on the dual side.

// Basis matrices of the space and of the acting Lie algebra, all r x r:
//   Y[l-1] = Y_l with (i,j)-entry 1 exactly when i+j = l+1 (1-indexed),
//   T[k]   = T_k, the k-th superdiagonal filled with r-k, r-k-1, ..., 1,
//   H1     = diag(1/2 - (j-1)/r), H2 = diag((j-1)/r).
struct GeneratorSet {
  int r = 0;
  std::vector<RationalMatrix> Y;
  std::vector<RationalMatrix> T;
  RationalMatrix H1, H2;
};

GeneratorSet generators(int r);

// Element h1*H1 + h2*H2 + sum_k t[k-1]*T_k of the Lie algebra.
struct LieElement {
  Rational h1{0}, h2{0};
  std::vector<Rational> t;
};

// The standard generator list H1, H2, T1..T_{r-1} with display names.
std::vector<std::pair<std::string, LieElement>> generator_elements(int r);

RationalMatrix lie_matrix(const GeneratorSet& gen, const LieElement& X);

// Symbolic r x r matrix with (i,j)-entry y_{i+j-1} when i+j <= r+2 and 0
// otherwise; equals sum_l y_l * Y_l.
PolyMatrix build_subhankel_matrix(int r);

// Numeric counterpart of build_subhankel_matrix at a coordinate point.
RationalMatrix coordinate_matrix(int r, const std::vector<Rational>& y);

// Reads coordinates back off a matrix, checking it stays inside the span of
// the Y_l (constant anti-diagonals, zero pattern). ValueError otherwise.
std::vector<Rational> coords_from_matrix(const RationalMatrix& m);

// Coordinate matrix of X acting on the primal side, y -> coords(Xm + mX^t),
// and its negative-transpose acting on the dual side.
RationalMatrix drho_matrix(const GeneratorSet& gen, const LieElement& X);
RationalMatrix drho_dual_matrix(const GeneratorSet& gen, const LieElement& X);

std::vector<Rational> drho(const GeneratorSet& gen, const LieElement& X,
                           const std::vector<Rational>& y);
std::vector<Rational> drho_dual(const GeneratorSet& gen, const LieElement& X,
                                const std::vector<Rational>& z);

// Upper-triangular group element together with its character data (a1, a2).
struct GroupElement {
  int r = 0;
  RationalMatrix matrix;
  Rational a1{1}, a2{1};
};

// exp(sum t_k T_k) times the diagonal with entries q^{r-2(j-1)} p^{j-1},
// j = 1..r, so a1 = q^{2r} and a2 = p^r. Requires p, q > 0; this
// parameterization keeps every fractional power of (a1, a2) rational.
GroupElement group_element(int r, const Rational& p, const Rational& q,
                           const std::vector<Rational>& t);

struct CharacterWeight {
  Rational s1{0}, s2{0};
};

// a1^{s1} * a2^{s2}; the weight must be an integer pair.
Rational character_value(const GroupElement& g, const CharacterWeight& w);

// g . y: coordinates of g M(y) g^t.
std::vector<Rational> act_y(const GroupElement& g, const std::vector<Rational>& y);
// Contragredient action on dual coordinates: S^t z where S is the
// coordinate matrix of y -> g^{-1} M(y) g^{-t}.
std::vector<Rational> act_z(const GroupElement& g, const std::vector<Rational>& z);

// The four relative invariants with their character weights.
struct InvariantSet {
  int r = 0;
  ContextPtr yctx, zctx;
  Poly P1, P2, Q1, Q2;
  CharacterWeight wP1, wP2, wQ1, wQ2;
  Rational q1_prefactor{1};
};

// 2-adic valuation of r!, i.e. sum over k of floor(r / 2^k).
long ell2(long r);

// P1 = det of the symbolic matrix, P2 = y_{r+1}, Q2 = z1, and Q1 is the
// normalized determinant of the dual-action matrix R(z): its column for
// generator X (columns T_{r-1}, ..., T_1, r*H2) holds the coefficients of
// drho_dual(X) z along the basis -Y*_2, ..., -Y*_{r+1}.
InvariantSet invariants(int r);

// Exhaustive structure relations of the generator matrices:
// [T_k, T_k'] = (k'-k) T_{k+k'}, T_k Y_l + Y_l T_k^t = (2r+1-k-l) Y_{l-k}
// (zero out of range), the H1/H2 commutation and anticommutation rules,
// and [H1, H2] = 0.
IdentityReport verify_structure_relations(int r);

enum class Side { Y, Z };

// Polynomial identity <grad P, drho(X) coords> = (s1 h1 + s2 h2) P for every
// generator X, with drho_dual on the dual side.
IdentityReport verify_infinitesimal_invariance(const Poly& P, const CharacterWeight& w, Side side);

// Trace identities for the two determinant characters:
// trace of drho_dual(X) restricted to span(Y*_2..Y*_{r+1}) equals
// -((r-1)/2) h1 - ((r+1)/2) h2, and the trace of ad X on
// span(T_1..T_{r-1}, r H2) equals ((r-1)/2) h1 - ((r-1)/2) h2.
IdentityReport verify_determinant_characters(int r);

// Exact relative invariance of all four invariants under seeded random group
// elements at random non-singular points.
IdentityReport verify_group_invariance(int r, int samples, uint64_t seed);

// Random small-coordinate point of the given dimension at which none of the
// listed polynomials vanish (rejection sampling).
std::vector<Rational> sample_nonvanishing(SplitMix64& rng, const std::vector<const Poly*>& avoid,
                                          size_t dim);

}  // namespace shk
