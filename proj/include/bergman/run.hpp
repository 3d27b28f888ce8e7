#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bergman/ball.hpp"

namespace bergman {

inline constexpr const char* kToolVersion = "0.1.0";

/// One CLI invocation.  Identical configs produce byte-identical output.
struct RunConfig {
  enum class Command {
    Kernel,
    Moments,
    Berezin,
    Growth,
    Metric,
    Zeros,
    Figure1,
    Figure2,
    Selfcheck
  };

  Command command = Command::Selfcheck;
  int n = 1;
  double a = 1.0;
  double b = 0.5;
  double c = 1.0;   // target weight parameters for growth checks
  double d = 0.5;
  double p = 2.0;   // Lebesgue exponent for the boundedness predicate
  double s = 0.0;   // growth exponent
  double tau = 2.0;
  int m = 50;       // family index / grid size, command dependent
  double radius = 0.999;
  std::uint64_t seed = 0;
  std::string format = "csv";  // csv | json
  std::string output;          // empty writes to the stream given to run()
  int threads = 1;
  std::size_t max_terms = 200000;
  double rel_tol = 1e-14;
  std::string f_name = "one";  // one | re_w1 | abs_sq | monomial
  std::vector<int> alpha;      // exponents for the monomial test function
  std::vector<cplx> z;
  std::vector<cplx> w;
};

/// Executes the command, writing the artifact to `out` (or to
/// config.output when set).  Returns the process exit status:
/// 0 success, 1 validation error, 2 numerical failure, 3 selfcheck
/// failure.
int run(const RunConfig& config, std::ostream& out);

/// Named invariant battery behind the selfcheck command.
std::vector<std::pair<std::string, bool>> run_selfchecks();

}  // namespace bergman
