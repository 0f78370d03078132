#pragma once

#include <string>
#include <vector>

namespace shk {

// Outcome of a batch of exact identity checks. Collects every failure count
// but keeps only the first few witness strings.
struct IdentityReport {
  size_t checks = 0;
  size_t failed = 0;
  std::vector<std::string> failures;

  bool passed() const { return failed == 0 && checks > 0; }

  void tally(bool ok, const std::string& witness) {
    ++checks;
    if (!ok) {
      ++failed;
      if (failures.size() < 10) failures.push_back(witness);
    }
  }

  void absorb(const IdentityReport& o) {
    checks += o.checks;
    failed += o.failed;
    for (const auto& f : o.failures)
      if (failures.size() < 10) failures.push_back(f);
  }
};

}  // namespace shk
