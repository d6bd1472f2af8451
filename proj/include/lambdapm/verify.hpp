#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Seeded property suites, one per acceptance criterion. Shared by the
// acceptance harness and the `verify` CLI verb.
namespace lpm::verify {

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::size_t failures = 0;
  std::string summary;
  std::string issues;  // the first three failures
  double seconds = 0;
};

// In criterion order: pmetric-axioms, order-capture, identities,
// isometry, enumeration-isometry, commutation, quantification, towers,
// genericity, brackets.
std::vector<std::string> suite_names();

// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = 0);

}  // namespace lpm::verify
