#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dww/spectral.hpp"

namespace dww::verify {

struct CriterionResult {
  std::string id;           // e.g. "C3"
  std::string description;
  bool pass = false;
  std::string detail;       // measured values
};

struct SuiteReport {
  std::string suite;
  std::vector<CriterionResult> results;

  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
};

// Zero-mean real field with coefficients up to |k| <= k_band; reproducible.
SpectralField random_band_field(const Grid& grid, int k_band, double amplitude,
                                std::uint64_t seed);

SuiteReport verify_operators();       // C1
SuiteReport verify_semigroup();       // C2
SuiteReport verify_inequality();      // C3, C4
SuiteReport verify_decay_bi();        // C5, C7
SuiteReport verify_decay_uni();       // C6
SuiteReport verify_energy_balance();  // C8
SuiteReport verify_convergence();     // C9, C10

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name);  // throws std::invalid_argument

void print_report(const SuiteReport& report, std::ostream& out);

}  // namespace dww::verify
