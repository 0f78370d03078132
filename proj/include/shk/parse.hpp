#pragma once

#include <stdexcept>
#include <string>

#include "shk/poly.hpp"

namespace shk {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses the textual polynomial form produced by Poly::str():
// signed terms like "3*y1^2*y2", "-1/2*z3", "y1*y5^3", "7", joined by
// "+" and "-".  Whitespace between tokens is ignored.  Every variable
// must belong to ctx; anything else raises ParseError with the offset.
Poly parse_poly(const ContextPtr& ctx, const std::string& text);

// Parses a single rational literal such as "5", "-3/4".
Rational parse_rational(const std::string& text);

}  // namespace shk
