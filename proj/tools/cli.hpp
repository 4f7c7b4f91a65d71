#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pctlab/cases.hpp"

namespace pctlab::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kVerificationFailed = 2,
  kNumericalFailure = 3,
};

/// Entry point of the pctlab tool. Data rows go to `out` (or the --out file),
/// diagnostics to `err`. Returns one of the ExitCode values.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// FNV-1a 64-bit hash of the canonical "key=value;" rendering of the sorted
/// parameter map, printed as 16 lowercase hex digits.
std::string param_hash(const ParamMap& params);

/// Fixed number formatting used in every table: %.17g.
std::string format_number(double v);

}  // namespace pctlab::cli
