#pragma once

#include <ostream>

namespace phasecal::tools {

/// Runs the built-in oracle checks, printing one line per check.
/// Returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace phasecal::tools
