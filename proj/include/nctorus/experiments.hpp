#ifndef NCTORUS_EXPERIMENTS_HPP
#define NCTORUS_EXPERIMENTS_HPP

#include <cstdint>
#include <string>

#include "nctorus/serialize.hpp"

namespace nct {

struct RunOptions {
  std::uint64_t seed = 1;
  int oracle_q = 101;
  int max_n = 0;  // when > 0, caps/overrides truncation radii from the config
  bool fail_fast = false;
  int threads = 1;
};

// Executes every experiment in the config and returns the JSON report.
// Deterministic for a fixed config and seed (timing fields aside).
Json run_experiments(const Json& config, const RunOptions& options);

// One CSV row per parameter value; parameter is one of "N", "theta", "tol".
std::string sweep_csv(const Json& config, const std::string& parameter,
                      const RunOptions& options);

bool report_passed(const Json& report);

}  // namespace nct

#endif
