#include "runner.hpp"

#include <chrono>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

#include "shk/legendre.hpp"
#include "shk/orthopoly.hpp"
#include "shk/space.hpp"
#include "shk/weyl.hpp"

namespace shk::cli {

using nlohmann::ordered_json;

namespace {

ordered_json identity_json(const IdentityReport& rep) {
  ordered_json j;
  j["checks"] = rep.checks;
  j["failed"] = rep.failed;
  if (!rep.failures.empty()) j["witnesses"] = rep.failures;
  return j;
}

std::string ml_status_name(MLReport::Status s) {
  switch (s) {
    case MLReport::Status::ExactPass: return "exact";
    case MLReport::Status::PassUpToSign: return "up-to-sign";
    case MLReport::Status::Fail: return "fail";
    case MLReport::Status::Degenerate: return "degenerate";
  }
  return "fail";
}

ordered_json ml_json(const MLReport& rep) {
  ordered_json j;
  j["status"] = ml_status_name(rep.status);
  j["constant"] = rep.constant.str();
  if (!rep.expected_constant.is_zero()) j["expected_magnitude"] = rep.expected_constant.abs().str();
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

MLReport::Status worse(MLReport::Status a, MLReport::Status b) {
  return static_cast<int>(a) < static_cast<int>(b) ? b : a;
}

std::string weight_str(const CharacterWeight& w) {
  return "(" + w.s1.str() + ", " + w.s2.str() + ")";
}

std::string sh_status_name(SHIdentityReport::Status s) {
  switch (s) {
    case SHIdentityReport::Status::Equal: return "equal";
    case SHIdentityReport::Status::ConstantRatio: return "constant-ratio";
    case SHIdentityReport::Status::Mismatch: return "mismatch";
  }
  return "mismatch";
}

// Families whose tabulated closed form is known to hold only up to documented
// irregularities; their rows are reported but do not gate the exit status.
bool informational_family(Family f) {
  return f == Family::GLuc || f == Family::NGLuc || f == Family::FibCor;
}

void run_invariants(const CheckRequest& req, CheckReport& out) {
  const int r = req.r.value_or(2);
  const InvariantSet inv = invariants(r);
  ordered_json& d = out.details;
  d["r"] = r;
  d["coordinates"] = inv.yctx->names();
  d["dual_coordinates"] = inv.zctx->names();
  d["P1"] = inv.P1.str();
  d["P2"] = inv.P2.str();
  d["Q1"] = inv.Q1.str();
  d["Q2"] = inv.Q2.str();
  ordered_json w;
  w["P1"] = weight_str(inv.wP1);
  w["P2"] = weight_str(inv.wP2);
  w["Q1"] = weight_str(inv.wQ1);
  w["Q2"] = weight_str(inv.wQ2);
  d["weights"] = w;
  d["q1_normalization"] = inv.q1_prefactor.str();
  out.status = "pass";
  out.exit_code = 0;
}

void run_verify_lie(const CheckRequest& req, CheckReport& out) {
  const int r = req.r.value_or(2);
  const IdentityReport structure = verify_structure_relations(r);
  const IdentityReport characters = verify_determinant_characters(r);
  out.details["r"] = r;
  out.details["structure"] = identity_json(structure);
  out.details["characters"] = identity_json(characters);
  const bool ok = structure.passed() && characters.passed();
  out.status = ok ? "pass" : "fail";
  out.exit_code = ok ? 0 : 1;
}

void run_verify_invariance(const CheckRequest& req, CheckReport& out) {
  const int r = req.r.value_or(2);
  const InvariantSet inv = invariants(r);
  ordered_json& d = out.details;
  d["r"] = r;
  IdentityReport infinitesimal;
  ordered_json per;
  const std::vector<std::tuple<std::string, const Poly*, CharacterWeight, Side>> rows = {
      {"P1", &inv.P1, inv.wP1, Side::Y},
      {"P2", &inv.P2, inv.wP2, Side::Y},
      {"Q1", &inv.Q1, inv.wQ1, Side::Z},
      {"Q2", &inv.Q2, inv.wQ2, Side::Z},
  };
  for (const auto& [name, poly, weight, side] : rows) {
    const IdentityReport rep = verify_infinitesimal_invariance(*poly, weight, side);
    per[name] = identity_json(rep);
    infinitesimal.absorb(rep);
  }
  d["infinitesimal"] = per;
  const IdentityReport group = verify_group_invariance(r, req.samples, req.seed);
  d["group"] = identity_json(group);
  d["samples"] = req.samples;
  d["seed"] = req.seed;
  const bool ok = infinitesimal.passed() && group.passed();
  out.status = ok ? "pass" : "fail";
  out.exit_code = ok ? 0 : 1;
}

void run_verify_ml(const CheckRequest& req, CheckReport& out) {
  const int r = req.r.value_or(2);
  ordered_json& d = out.details;
  d["r"] = r;
  const MLReport ptoq = verify_ml_closed_form(r, MLDirection::PToQ);
  const MLReport qtop = verify_ml_closed_form(r, MLDirection::QToP);
  ordered_json closed;
  closed["p_to_q"] = ml_json(ptoq);
  closed["q_to_p"] = ml_json(qtop);
  d["closed_form"] = closed;
  MLReport::Status overall = worse(ptoq.status, qtop.status);
  if (req.us) {
    CharacterWeight us;
    us.s1 = Rational(req.us->first);
    us.s2 = Rational(req.us->second);
    const MLReport pw = verify_ml_pointwise(r, us, req.samples, req.seed);
    ordered_json pj = ml_json(pw);
    pj["us"] = weight_str(us);
    pj["samples"] = req.samples;
    pj["seed"] = req.seed;
    d["pointwise"] = pj;
    overall = worse(overall, pw.status);
  }
  switch (overall) {
    case MLReport::Status::ExactPass:
      out.status = "pass";
      out.exit_code = 0;
      break;
    case MLReport::Status::PassUpToSign:
      out.status = "pass-up-to-sign";
      out.exit_code = 0;
      break;
    case MLReport::Status::Fail:
      out.status = "fail";
      out.exit_code = 1;
      break;
    case MLReport::Status::Degenerate:
      out.status = "unsupported";
      out.exit_code = 2;
      break;
  }
}

void run_verify_bfun(const CheckRequest& req, CheckReport& out) {
  const int r = req.r.value_or(2);
  ordered_json& d = out.details;
  d["r"] = r;
  const BFunctionReport b = b_function_check(r);
  d["b_measured"] = b.measured.str();
  d["b_measured_factored"] = factored_b_display(b.measured);
  d["b_predicted"] = b.predicted.str();
  d["b_predicted_factored"] = factored_b_display(b.predicted);
  if (!b.note.empty()) d["note"] = b.note;
  const IdentityReport euler = euler_check(r);
  d["euler"] = identity_json(euler);
  const bool ok = b.pass && euler.passed();
  out.status = ok ? "pass" : "fail";
  out.exit_code = ok ? 0 : 1;
}

void run_verify_orthopoly(const CheckRequest& req, CheckReport& out) {
  std::vector<Family> fams;
  if (req.family) {
    const auto f = family_from_name(*req.family);
    if (!f) throw ValueError("unknown family '" + *req.family + "'");
    fams.push_back(*f);
  } else {
    fams = all_families();
  }
  const std::vector<int> rs = req.r ? std::vector<int>{*req.r} : std::vector<int>{2, 3, 4, 5};
  const std::vector<int> ns = req.n ? std::vector<int>{*req.n} : std::vector<int>{0, 1, 2, 3};

  ordered_json rows = ordered_json::array();
  bool gated_fail = false;
  bool any_ratio = false;
  bool ratio_magnitudes_ok = true;
  // witness ratio per (family, r): the ratio must not depend on n
  std::map<std::pair<std::string, int>, Rational> cell_ratio;
  for (Family f : fams) {
    for (int r : rs) {
      for (int n : ns) {
        const SHIdentityReport rep = verify_identity(f, r, n);
        ordered_json row;
        row["family"] = family_name(f);
        row["r"] = r;
        row["n"] = n;
        row["status"] = sh_status_name(rep.status);
        if (rep.ratio_defined()) row["ratio"] = rep.ratio.str();
        if (!rep.note.empty()) row["note"] = rep.note;
        if (rep.hankel_checked) row["hankel_vanishes"] = rep.hankel_vanishes;
        rows.push_back(std::move(row));
        if (rep.hankel_checked && !rep.hankel_vanishes) gated_fail = true;
        if (informational_family(f)) continue;
        if (rep.status == SHIdentityReport::Status::Mismatch) {
          gated_fail = true;
          continue;
        }
        if (rep.status == SHIdentityReport::Status::ConstantRatio) {
          any_ratio = true;
          if (!rep.ratio.abs().is_one()) ratio_magnitudes_ok = false;
        }
        if (f == Family::GFib && rep.status != SHIdentityReport::Status::Equal)
          gated_fail = true;
        const auto key = std::make_pair(family_name(f), r);
        const auto it = cell_ratio.find(key);
        if (it == cell_ratio.end())
          cell_ratio.emplace(key, rep.ratio);
        else if (!(it->second == rep.ratio))
          gated_fail = true;
      }
    }
  }
  out.details["rows"] = std::move(rows);
  out.details["gating"] =
      "gluc, ngluc and fibcor rows are informational; every other family must "
      "match exactly or up to a constant ratio that is independent of n, and "
      "full Hankel determinants must vanish where checked";
  if (gated_fail) {
    out.status = "fail";
    out.exit_code = 1;
  } else if (any_ratio) {
    out.status = "constant-ratio";
    out.exit_code = ratio_magnitudes_ok ? 0 : 1;
  } else {
    out.status = "pass";
    out.exit_code = 0;
  }
}

void run_polarize(const CheckRequest& req, CheckReport& out) {
  const int r = req.r.value_or(2);
  const int k = req.k.value_or(1);
  if (k < 0) throw ValueError("need k >= 0");
  const InvariantSet inv = invariants(r);
  Poly f = inv.P1;
  for (int i = 0; i < k; ++i) f = polarize(f);
  ordered_json& d = out.details;
  d["r"] = r;
  d["k"] = k;
  d["input"] = inv.P1.str();
  d["variables"] = f.ctx()->names();
  d["output"] = f.str();
  out.status = "pass";
  out.exit_code = 0;
}

void run_verify_conjb(const CheckRequest& req, CheckReport& out) {
  const int r = req.r.value_or(2);
  const int k = req.k.value_or(1);
  if (k < 0) throw ValueError("need k >= 0");
  const BFunctionReport rep = polarized_b_function_check(r, k);
  ordered_json& d = out.details;
  d["r"] = r;
  d["k"] = k;
  d["measured"] = rep.measured.str();
  d["measured_factored"] = factored_b_display(rep.measured);
  d["predicted"] = rep.predicted.str();
  d["predicted_factored"] = factored_b_display(rep.predicted);
  if (!rep.note.empty()) d["note"] = rep.note;
  if (rep.unsupported) {
    out.status = "unsupported";
    out.exit_code = 2;
  } else {
    out.status = rep.pass ? "pass" : "fail";
    out.exit_code = rep.pass ? 0 : 1;
  }
}

}  // namespace

CheckReport run_check(const CheckRequest& req) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport out;
  out.command = req.command;
  try {
    if (req.r && (*req.r < 2 || *req.r > 64))
      throw ValueError("r must be between 2 and 64");
    if (req.samples < 1) throw ValueError("samples must be at least 1");
    if (req.command == "invariants")
      run_invariants(req, out);
    else if (req.command == "verify-lie")
      run_verify_lie(req, out);
    else if (req.command == "verify-invariance")
      run_verify_invariance(req, out);
    else if (req.command == "verify-ml")
      run_verify_ml(req, out);
    else if (req.command == "verify-bfun")
      run_verify_bfun(req, out);
    else if (req.command == "verify-orthopoly")
      run_verify_orthopoly(req, out);
    else if (req.command == "polarize")
      run_polarize(req, out);
    else if (req.command == "verify-conjB")
      run_verify_conjb(req, out);
    else
      throw ValueError("unknown command '" + req.command + "'");
  } catch (const std::exception& e) {
    out.status = "unsupported";
    out.exit_code = 2;
    out.details["error"] = e.what();
  }
  out.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return out;
}

ordered_json report_json(const CheckReport& rep) {
  ordered_json j;
  j["command"] = rep.command;
  j["status"] = rep.status;
  j["details"] = rep.details;
  return j;
}

std::string report_text(const CheckReport& rep) {
  std::ostringstream out;
  out << "== " << rep.command << " ==\n";
  out << "status: " << rep.status << "\n";
  out << rep.details.dump(2) << "\n";
  out << "elapsed: " << rep.elapsed_ms << " ms\n";
  return out.str();
}

}  // namespace shk::cli
