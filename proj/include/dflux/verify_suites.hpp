#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace dflux {

/// Random bounded-variation cell data in [lo, hi]: segments of 1..8 cells
/// that are constant, linear ramps, or noise, so limited slopes are nonzero on
/// a good share of cells.
std::vector<double> random_bv_values(std::size_t n, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0);

struct VerifyOutcome {
  bool passed = true;
  std::string failing_scenario;
  double worst_margin = 0.0;  // smallest (bound - measured) seen; negative on failure
};

/// Names accepted by run_verify_suite.
const std::vector<std::string>& verify_suite_names();

/// Runs a named property suite on fixed seeds, printing one line per scenario.
/// Throws std::invalid_argument for an unknown suite name.
VerifyOutcome run_verify_suite(const std::string& suite, std::ostream& log);

}  // namespace dflux
