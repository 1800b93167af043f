#pragma once

#include <string>
#include <vector>

namespace oamncc::cli {

/**
 * Entry point behind the `oamncc` binary. Subcommands: run, sweep, compare,
 * presets. Exit codes: 0 ok, 1 internal error, 2 configuration error,
 * 3 sampling failure. The OAMNCC_SEED environment variable overrides the
 * master seed when no --seed flag is given.
 */
int dispatch(const std::vector<std::string>& args);

/// Fixed 9-significant-digit float formatting used for all CSV/JSON output.
std::string format_value(double v);

} // namespace oamncc::cli
