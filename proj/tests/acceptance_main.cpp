// Acceptance checks: one line of output per criterion, nonzero exit when any
// of them fails. Wall-clock budgets are part of the criteria and enforced.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "runner.hpp"
#include "shk/legendre.hpp"
#include "shk/orthopoly.hpp"
#include "shk/parse.hpp"
#include "shk/space.hpp"
#include "shk/weyl.hpp"

using namespace shk;

namespace {

int g_failures = 0;

void report(int num, const std::string& desc, bool ok) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", num, desc.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void criterion(int num, const std::string& desc, const std::function<bool()>& body) {
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::printf("  criterion %d raised: %s\n", num, e.what());
    ok = false;
  }
  report(num, desc, ok);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

bool within(const Stopwatch& sw, long long budget_ms, const char* label) {
  const long long t = sw.ms();
  std::printf("  %s took %lld ms (budget %lld ms)\n", label, t, budget_ms);
  return t < budget_ms;
}

CharacterWeight weight(long s1, long s2) {
  CharacterWeight w;
  w.s1 = Rational(s1);
  w.s2 = Rational(s2);
  return w;
}

}  // namespace

int main() {
  criterion(1, "generator structure relations hold exhaustively for sizes 2..8 within 1 s", [] {
    Stopwatch sw;
    bool ok = true;
    for (int r = 2; r <= 8; ++r) {
      const IdentityReport rep = verify_structure_relations(r);
      if (!rep.passed()) {
        std::printf("  size %d: %zu of %zu relation checks failed\n", r, rep.failed, rep.checks);
        ok = false;
      }
    }
    return within(sw, 1000, "sizes 2..8") && ok;
  });

  criterion(2, "size-4 invariants match the published expansions coefficient-exactly", [] {
    const InvariantSet inv = invariants(4);
    const Poly q1 = parse_poly(inv.zctx,
        "64*z1^3*z5 - 32*z1^2*z2*z4 - 16*z1^2*z3^2 + 24*z1*z2^2*z3 - 5*z2^4");
    const Poly p1 = parse_poly(inv.yctx,
        "-y1*y5^3 + 2*y2*y4*y5^2 + y3^2*y5^2 - 3*y3*y4^2*y5 + y4^4");
    bool ok = true;
    if (!(inv.Q1 == q1)) {
      std::printf("  Q1 = %s\n", inv.Q1.str().c_str());
      ok = false;
    }
    if (!(inv.P1 == p1)) {
      std::printf("  P1 = %s\n", inv.P1.str().c_str());
      ok = false;
    }
    return ok;
  });

  criterion(3, "infinitesimal relative invariance of all four invariants, sizes 2..6, within 30 s", [] {
    Stopwatch sw;
    bool ok = true;
    for (int r = 2; r <= 6; ++r) {
      const InvariantSet inv = invariants(r);
      const std::vector<std::tuple<const char*, const Poly*, CharacterWeight, Side>> rows = {
          {"P1", &inv.P1, inv.wP1, Side::Y},
          {"P2", &inv.P2, inv.wP2, Side::Y},
          {"Q1", &inv.Q1, inv.wQ1, Side::Z},
          {"Q2", &inv.Q2, inv.wQ2, Side::Z},
      };
      for (const auto& [name, p, w, side] : rows) {
        const IdentityReport rep = verify_infinitesimal_invariance(*p, w, side);
        if (!rep.passed()) {
          std::printf("  size %d %s: %s\n", r, name,
                      rep.failures.empty() ? "failed" : rep.failures[0].c_str());
          ok = false;
        }
      }
    }
    return within(sw, 30000, "sizes 2..6") && ok;
  });

  criterion(4, "exact invariance under 100 seeded random group elements, sizes 2..5", [] {
    bool ok = true;
    for (int r = 2; r <= 5; ++r) {
      const IdentityReport rep = verify_group_invariance(r, 100, shk::cli::kDefaultSeed);
      if (!rep.passed() || rep.checks != 400) {
        std::printf("  size %d: %zu checks, %zu failed\n", r, rep.checks, rep.failed);
        ok = false;
      }
    }
    return ok;
  });

  criterion(5, "determinant character trace identities, sizes 2..6", [] {
    bool ok = true;
    for (int r = 2; r <= 6; ++r) {
      const IdentityReport rep = verify_determinant_characters(r);
      if (!rep.passed()) {
        std::printf("  size %d: %zu of %zu failed\n", r, rep.failed, rep.checks);
        ok = false;
      }
    }
    return ok;
  });

  criterion(6, "transform constants match the closed formulas up to sign, sizes 3..5, within 5 min", [] {
    Stopwatch sw;
    bool ok = true;
    for (int r = 3; r <= 5; ++r) {
      const long e = ell2(r) + r - 1;
      const Rational pq_expected =
          (Rational(2).pow(e) * Rational(r - 1)).pow(r - 1).inverse();
      const Rational qp_expected =
          (Rational(2).pow(e) * Rational(r - 1).pow(r - 1)).inverse();
      const MLReport pq = verify_ml_closed_form(r, MLDirection::PToQ);
      const MLReport qp = verify_ml_closed_form(r, MLDirection::QToP);
      if (!pq.ok() || pq.constant.abs() != pq_expected) {
        std::printf("  size %d forward constant %s, expected magnitude %s\n", r,
                    pq.constant.str().c_str(), pq_expected.str().c_str());
        ok = false;
      }
      if (!qp.ok() || qp.constant.abs() != qp_expected) {
        std::printf("  size %d backward constant %s, expected magnitude %s\n", r,
                    qp.constant.str().c_str(), qp_expected.str().c_str());
        ok = false;
      }
      if (r == 4) {
        // the worked size-4 anchor: 1 / (2^6 * 3)^3 up to sign
        const Rational anchor = Rational(1, 7077888);
        if (pq.constant.abs() != anchor) {
          std::printf("  size-4 anchor violated: %s\n", pq.constant.str().c_str());
          ok = false;
        }
      }
    }
    return within(sw, 300000, "sizes 3..5 both directions") && ok;
  });

  criterion(7, "pointwise transform product is one constant over 10 samples, sizes 3 and 4", [] {
    bool ok = true;
    for (int r = 3; r <= 4; ++r) {
      for (const auto& [s1, s2] : {std::pair<long, long>{1, 1}, {2, 5}, {3, 2}}) {
        const MLReport rep = verify_ml_pointwise(r, weight(s1, s2), 10, shk::cli::kDefaultSeed);
        if (rep.status != MLReport::Status::ExactPass) {
          std::printf("  size %d weights (%ld, %ld): %s\n", r, s1, s2, rep.note.c_str());
          ok = false;
        } else {
          std::printf("  size %d weights (%ld, %ld): constant %s\n", r, s1, s2,
                      rep.constant.str().c_str());
        }
      }
    }
    return ok;
  });

  criterion(8, "b-polynomials match the predicted product, sizes 2..4 within 2 min", [] {
    Stopwatch sw;
    bool ok = true;
    for (int r = 2; r <= 4; ++r) {
      const BFunctionReport rep = b_function_check(r);
      if (!rep.pass || !(rep.measured == predicted_b_polynomial(r, 0))) {
        std::printf("  size %d measured %s\n", r, factored_b_display(rep.measured).c_str());
        ok = false;
      }
    }
    const BFunctionReport two = b_function_check(2);
    if (factored_b_display(two.measured) != "(s + 1)(s + 3/2)") {
      std::printf("  size-2 classical form violated: %s\n",
                  factored_b_display(two.measured).c_str());
      ok = false;
    }
    return within(sw, 120000, "sizes 2..4") && ok;
  });

  criterion(8, "extended: the size-5 b-polynomial within 30 min", [] {
    Stopwatch sw;
    const BFunctionReport rep = b_function_check(5);
    std::printf("  size 5 measured %s\n", factored_b_display(rep.measured).c_str());
    const bool ok = rep.pass && rep.measured == predicted_b_polynomial(5, 0);
    return within(sw, 1800000, "size 5") && ok;
  });

  criterion(9, "scaling identity of the invariant power, sizes 2..5", [] {
    bool ok = true;
    for (int r = 2; r <= 5; ++r) {
      const IdentityReport rep = euler_check(r);
      if (!rep.passed()) {
        std::printf("  size %d failed\n", r);
        ok = false;
      }
    }
    return ok;
  });

  criterion(10, "window determinant identities across the recurrence families", [] {
    bool ok = true;
    // the generic second-kind identity is exact, ratio +1
    for (int r = 2; r <= 3; ++r)
      for (int n = 0; n <= 4; ++n) {
        const SHIdentityReport rep = verify_identity(Family::GFib, r, n);
        if (rep.status != SHIdentityReport::Status::Equal) {
          std::printf("  gfib size %d offset %d not exact\n", r, n);
          ok = false;
        }
      }
    // each classical identity keeps one n-independent constant ratio per size
    const Family classical[] = {Family::ChebT, Family::ChebU, Family::ChebV, Family::Fib,
                                Family::Luc,   Family::QuotForm, Family::SumForm};
    std::printf("  family      size   ratio\n");
    for (Family f : classical) {
      for (int r = 2; r <= 5; ++r) {
        bool have = false;
        Rational ratio;
        for (int n = 0; n <= 3; ++n) {
          const SHIdentityReport rep = verify_identity(f, r, n);
          if (!rep.ratio_defined()) {
            std::printf("  %s size %d offset %d: no constant ratio\n",
                        family_name(f).c_str(), r, n);
            ok = false;
            continue;
          }
          if (!have) {
            ratio = rep.ratio;
            have = true;
          } else if (!(ratio == rep.ratio)) {
            std::printf("  %s size %d: ratio depends on the offset\n", family_name(f).c_str(), r);
            ok = false;
          }
        }
        if (have) {
          std::printf("  %-10s  %d      %s\n", family_name(f).c_str(), r, ratio.str().c_str());
          if (!ratio.abs().is_one()) {
            std::printf("  %s size %d: |ratio| != 1\n", family_name(f).c_str(), r);
            ok = false;
          }
        }
      }
    }
    // full window determinants vanish for every family once the size exceeds 2
    for (Family f : all_families()) {
      PolySequence seq(f);
      for (int r = 3; r <= 5; ++r)
        for (int n = 0; n <= 3; ++n)
          if (!hankel_det(seq, r, n).is_zero()) {
            std::printf("  %s size %d offset %d: full determinant nonzero\n",
                        family_name(f).c_str(), r, n);
            ok = false;
          }
    }
    return ok;
  });

  criterion(11, "doubled-variable transform partners pass the pointwise product check", [] {
    bool ok = true;
    {
      const ContextPtr x = VariableContext::make({"x1"});
      const ContextPtr z = VariableContext::make({"z1"});
      const Poly f = Poly::term(x, {2}, Rational(1));
      const PowerProduct fstar =
          make_power_product(z, Rational(1, 4), {{Poly::variable(z, 0), 2}});
      const PointwiseMLReport pw =
          ml_pointwise_product_check(polarize(f), ml_polarization(fstar, 2), 10,
                                     shk::cli::kDefaultSeed);
      if (!pw.details.passed() || !pw.constant.is_one()) {
        std::printf("  squared-variable case: constant %s\n", pw.constant.str().c_str());
        ok = false;
      }
    }
    for (int r = 2; r <= 3; ++r) {
      const InvariantSet inv = invariants(r);
      const MLReport ml = verify_ml_closed_form(r, MLDirection::PToQ);
      const long corner = 2L * r - 1L * r * r;
      std::vector<std::pair<Poly, long>> fac{{inv.Q1, r - 1}};
      if (corner != 0) fac.emplace_back(inv.Q2, corner);
      const PowerProduct H = make_power_product(inv.zctx, ml.constant, fac);
      const PointwiseMLReport pw = ml_pointwise_product_check(
          polarize(inv.P1), ml_polarization(H, r), 10, shk::cli::kDefaultSeed);
      if (!pw.details.passed() || !pw.constant.is_one()) {
        std::printf("  determinant case size %d: constant %s, %zu of %zu failed\n", r,
                    pw.constant.str().c_str(), pw.details.failed, pw.details.checks);
        ok = false;
      }
    }
    return ok;
  });

  criterion(12, "polarized b-polynomial at the minimal size, or a structured refusal", [] {
    const BFunctionReport rep = polarized_b_function_check(3, 1);
    if (rep.unsupported) {
      // a refusal must carry a diagnostic of the obstruction
      std::printf("  unsupported: %s\n", rep.note.c_str());
      return !rep.note.empty();
    }
    const Poly expected = parse_poly(s_context(), "s^3 + 11/2*s^2 + 13/2*s + 2");
    if (!rep.pass || !(rep.measured == expected)) {
      std::printf("  measured %s\n", factored_b_display(rep.measured).c_str());
      return false;
    }
    std::printf("  measured %s\n", factored_b_display(rep.measured).c_str());
    return true;
  });

  criterion(13, "two full runs with the default seed emit byte-identical reports", [] {
    using shk::cli::CheckRequest;
    std::vector<CheckRequest> suite;
    for (const char* cmd : {"invariants", "verify-lie", "verify-invariance", "verify-ml",
                            "verify-bfun", "polarize"}) {
      for (int r = 2; r <= 4; ++r) {
        CheckRequest req;
        req.command = cmd;
        req.r = r;
        suite.push_back(req);
      }
    }
    {
      CheckRequest req;
      req.command = "verify-ml";
      req.r = 3;
      req.us = std::make_pair(2L, 5L);
      suite.push_back(req);
      req.command = "verify-orthopoly";
      req.us.reset();
      req.r.reset();
      suite.push_back(req);
      req.command = "verify-conjB";
      req.r = 3;
      req.k = 1;
      suite.push_back(req);
    }
    const auto run_all = [&suite] {
      std::string out;
      for (const auto& req : suite) out += shk::cli::report_json(shk::cli::run_check(req)).dump() + "\n";
      return out;
    };
    const std::string first = run_all();
    const std::string second = run_all();
    std::printf("  %zu commands, %zu bytes per run\n", suite.size(), first.size());
    return !first.empty() && first == second;
  });

  std::printf("%s: %d criterion failure(s)\n", g_failures == 0 ? "OK" : "NOT OK", g_failures);
  return g_failures == 0 ? 0 : 1;
}
