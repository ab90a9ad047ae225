#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace erldp::cli {

/// Runs one command line (without the program name). Results go to `out`
/// (or the --out file), one-line diagnostics to `err`.
/// Exit codes: 0 success, 2 invalid input, 3 numerical non-convergence.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Cartesian grid from a flat INI file:
///
///   [sim]
///   n = 200, 400
///   theta = -1:1:1     # start:stop:step, inclusive
///   trials = 1000
///
/// Every section is a command path ("asym conn", "sim", ...); every key a
/// flag. Writes one CSV row per grid point with a running index column.
/// When `out_path` already holds rows, their indices are skipped and new
/// rows are appended, so an interrupted sweep can be resumed.
/// Failed points are written with status "error" and the sweep continues.
int run_sweep(const std::string& config_path, const std::string& out_path, std::ostream& err);

}  // namespace erldp::cli
