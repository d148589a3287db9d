// Named verification suites shared by the acceptance binary and the CLI's
// `verify` subcommand. Each check pins its tolerance in code.

#ifndef CHIRAL_VERIFICATION_HPP
#define CHIRAL_VERIFICATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chiral/bulk.hpp"

namespace chiral {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;   // error measure or margin, depending on the check
  double tolerance = 0.0;  // bound it is compared against
  std::string detail;
};

/// Suite names: commutator, ope, stress, covariance, dilation, causality,
/// mollifier, scaling, fourier, hadamard, roundtrip, semiclassical.
std::vector<std::string> suite_names();

/// Runs a named suite; throws std::invalid_argument for unknown names.
std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed);

/// All thirteen acceptance criteria in order; each entry is one criterion.
std::vector<CheckResult> run_acceptance(std::uint64_t seed);

}  // namespace chiral

#endif
