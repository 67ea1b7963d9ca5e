#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace stabb {

struct RunConfig {
  std::string subcommand;  // soi | border-basis | bm | verify
  std::string input_path;
  std::optional<Eigen::VectorXd> tolerance;  // sidecar fallback when absent
  std::string ordering = "deglex";
  unsigned precision_bits = 53;
  int trials = 1000;
  std::uint64_t seed = 1;
  std::string format = "text";          // text | json
  std::string candidate_rule = "literal";  // literal | bm
};

// Executes one configured run. Returns the process exit code: 0 on success,
// 2 when the stable order ideal is not a quotient basis, 1 on other errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (CLI front end) and dispatches to run.
int main_impl(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stabb
