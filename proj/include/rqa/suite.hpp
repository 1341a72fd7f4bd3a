#ifndef RQA_SUITE_HPP
#define RQA_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace rqa::suite {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

/// The acceptance battery; deterministic for a fixed seed.
std::vector<CriterionResult> run_all(std::uint64_t seed);

/// One criterion by number (1-based); throws BadInput for unknown ids.
CriterionResult run_one(int id, std::uint64_t seed);

}  // namespace rqa::suite

#endif
