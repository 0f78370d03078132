#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "runner.hpp"

namespace {

using shk::cli::CheckReport;
using shk::cli::CheckRequest;

// Parse "a,b" into a pair of integers for the --us option.
std::optional<std::pair<long, long>> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return std::nullopt;
  try {
    std::size_t used = 0;
    const long a = std::stol(text.substr(0, comma), &used);
    if (used != comma) return std::nullopt;
    const std::string rest = text.substr(comma + 1);
    const long b = std::stol(rest, &used);
    if (used != rest.size()) return std::nullopt;
    return std::make_pair(a, b);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for the invariant theory of sub-Hankel determinants"};
  app.require_subcommand(1);

  CheckRequest req;
  int rank = 0;
  int index_n = 0;
  int index_k = 0;
  std::string family;
  std::string us_text;
  std::string output_path;

  auto add_common = [&](CLI::App* sub, bool with_rank = true) {
    if (with_rank)
      sub->add_option("-r,--rank", rank, "matrix size r")->check(CLI::Range(2, 64));
    sub->add_option("--format", req.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--output", output_path, "also write the JSON report to this file");
    return sub;
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--samples", req.samples, "number of random sample points")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    sub->add_option("--seed", req.seed, "random seed")->capture_default_str();
    return sub;
  };

  CLI::App* inv = add_common(app.add_subcommand(
      "invariants", "print the four fundamental relative invariants and their weights"));
  CLI::App* lie = add_common(app.add_subcommand(
      "verify-lie", "check the structure relations and determinant characters"));
  CLI::App* invar = add_sampling(add_common(app.add_subcommand(
      "verify-invariance", "check infinitesimal and sampled group invariance")));
  CLI::App* ml = add_sampling(add_common(app.add_subcommand(
      "verify-ml", "check the multiplicative Legendre-type identities")));
  ml->add_option("--us", us_text, "integer weight pair 's1,s2' for the pointwise check");
  CLI::App* bfun = add_common(app.add_subcommand(
      "verify-bfun", "measure the b-polynomial of the fundamental invariant"));
  CLI::App* ortho = add_common(app.add_subcommand(
      "verify-orthopoly", "check sub-Hankel determinant identities for recurrence families"));
  ortho->add_option("-n,--index", index_n, "sequence offset n")->check(CLI::Range(0, 64));
  ortho->add_option("--family", family, "restrict to one family");
  CLI::App* pol = add_common(app.add_subcommand(
      "polarize", "print the k-fold polarization of the fundamental invariant"));
  pol->add_option("-k,--steps", index_k, "number of polarization steps")->check(CLI::Range(0, 8));
  CLI::App* conjb = add_common(app.add_subcommand(
      "verify-conjB", "measure the b-polynomial of the k-fold polarized invariant"));
  conjb->add_option("-k,--steps", index_k, "number of polarization steps")
      ->check(CLI::Range(0, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* fired = app.get_subcommands().front();
  req.command = fired->get_name();
  if (fired->count("-r")) req.r = rank;
  if (fired == ortho && fired->count("-n")) req.n = index_n;
  if ((fired == pol || fired == conjb) && fired->count("-k")) req.k = index_k;
  if (fired == ortho && fired->count("--family")) req.family = family;
  if (fired == ml && fired->count("--us")) {
    const auto pair = parse_pair(us_text);
    if (!pair) {
      std::cerr << "error: --us expects two comma-separated integers, e.g. --us 2,5\n";
      return 2;
    }
    req.us = *pair;
  }
  (void)inv;
  (void)lie;
  (void)invar;
  (void)bfun;

  const CheckReport rep = shk::cli::run_check(req);
  if (rep.status == "unsupported" && rep.details.contains("error"))
    std::cerr << "error: " << rep.details["error"].get<std::string>() << "\n";

  if (req.format == "json")
    std::cout << shk::cli::report_json(rep).dump(2) << "\n";
  else
    std::cout << shk::cli::report_text(rep);

  if (!output_path.empty()) {
    std::ofstream file(output_path);
    if (!file) {
      std::cerr << "error: cannot write " << output_path << "\n";
      return 2;
    }
    file << shk::cli::report_json(rep).dump(2) << "\n";
  }
  return rep.exit_code;
}
