#include "shk/parse.hpp"

#include <cctype>

namespace shk {

namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at offset " + std::to_string(pos_));
  }

  std::string integer_digits() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }

  std::string identifier() {
    skip_ws();
    size_t start = pos_;
    if (pos_ >= s_.size() || !std::islower(static_cast<unsigned char>(s_[pos_]))) fail("expected variable name");
    ++pos_;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_')
        ++pos_;
      else
        break;
    }
    return s_.substr(start, pos_ - start);
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;
};

// term := [number] ('*' factor)* | factor ('*' factor)*
// factor := ident ['^' digits]
Poly parse_term(Cursor& cur, const ContextPtr& ctx) {
  Rational coeff(1);
  bool saw_anything = false;
  if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
    std::string num = cur.integer_digits();
    std::string lit = num;
    if (cur.eat('/')) lit += "/" + cur.integer_digits();
    coeff = Rational::from_string(lit);
    saw_anything = true;
    if (!cur.eat('*')) return Poly::constant(ctx, coeff);
  }
  std::vector<uint32_t> exps(ctx->size(), 0);
  for (;;) {
    std::string name = cur.identifier();
    auto idx = ctx->find(name);
    if (!idx) cur.fail("unknown variable '" + name + "'");
    uint32_t e = 1;
    if (cur.eat('^')) {
      std::string d = cur.integer_digits();
      if (d.size() > 9) cur.fail("exponent too large");
      e = static_cast<uint32_t>(std::stoul(d));
    }
    exps[*idx] += e;
    saw_anything = true;
    if (!cur.eat('*')) break;
  }
  if (!saw_anything) cur.fail("expected term");
  return Poly::term(ctx, std::move(exps), coeff);
}

}  // namespace

Poly parse_poly(const ContextPtr& ctx, const std::string& text) {
  Cursor cur(text);
  Poly acc = Poly::zero(ctx);
  bool first = true;
  while (!cur.done()) {
    int sign = 1;
    if (cur.eat('-'))
      sign = -1;
    else if (cur.eat('+')) {
      if (first) cur.fail("unexpected leading '+'");
    } else if (!first) {
      cur.fail("expected '+' or '-' between terms");
    }
    Poly t = parse_term(cur, ctx);
    acc = sign < 0 ? acc - t : acc + t;
    first = false;
  }
  if (first) cur.fail("empty polynomial");
  return acc;
}

Rational parse_rational(const std::string& text) {
  Cursor cur(text);
  int sign = 1;
  if (cur.eat('-')) sign = -1;
  std::string lit = cur.integer_digits();
  if (cur.eat('/')) lit += "/" + cur.integer_digits();
  if (!cur.done()) cur.fail("trailing characters");
  Rational r = Rational::from_string(lit);
  return sign < 0 ? -r : r;
}

}  // namespace shk
