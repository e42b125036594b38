#pragma once

#include <string>

#include "run_config.hpp"

namespace xycorr::cli {

/// Exit codes: 0 success, 2 config error, 3 numerical failure.
int cmd_sweep(const RunConfig& cfg);
int cmd_cp(const RunConfig& cfg);
int cmd_longrange(const RunConfig& cfg);
/// Exit codes: 0 all checks pass, 1 any failure.
int cmd_verify(const RunConfig& cfg);

/// Fixed CSV float format: 17 significant digits, '.' decimal separator.
std::string fmt_g17(double v);

}  // namespace xycorr::cli
