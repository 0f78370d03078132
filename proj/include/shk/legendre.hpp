#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shk/space.hpp"

namespace shk {

struct SingularPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Gradient-of-log map for the weight pair (s1, s2): at a non-singular y,
//   z_l = s1 * (d_l P1 / P1) + (s2 - (r-1) s1) * delta_{l,r+1} / y_{r+1}.
std::vector<Rational> inv_map(const InvariantSet& inv, const CharacterWeight& us,
                              const std::vector<Rational>& y);

enum class MLDirection { PToQ, QToP };

struct MLReport {
  enum class Status { ExactPass, PassUpToSign, Fail, Degenerate };
  Status status = Status::Fail;
  Rational constant{0};
  Rational expected_constant{0};
  std::string note;

  bool ok() const { return status == Status::ExactPass || status == Status::PassUpToSign; }
};

// Exact polynomial form of the transform identity, cross-multiplied so only
// exact division is needed. For PToQ the measured constant is the ratio
//   P1^{r-1} (d P1/d y1)^{r^2-2r}  :  Q1(grad P1)^{r-1},
// expected (2^{ell2(r)+r-1} (r-1))^{-(r-1)} up to sign; QToP swaps the roles
// (corner derivative d Q1/d z_{r+1}, P1(grad Q1)) and its expected magnitude
// is (2^{ell2(r)+r-1} (r-1)^{r-1})^{-1}. Homogeneity of both sides is
// checked first.
MLReport verify_ml_closed_form(int r, MLDirection dir);

// Samples non-singular points y, pushes them through inv_map, and checks
// that Q2^{s1-(r-1)s2} Q1^{s2} at the image times P1^{s1} P2^{s2-(r-1)s1}
// at y is the same constant for every sample. Integer weights only; a zero
// weight component reports Degenerate (the map is not bijective there).
MLReport verify_ml_pointwise(int r, const CharacterWeight& us, int samples, uint64_t seed);

}  // namespace shk
