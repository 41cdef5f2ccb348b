#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pushback::cli {

/// Entry point behind the pushback_sim executable. `args` excludes argv[0].
/// Returns 0 on success, 1 on configuration or usage errors, 2 on a runtime fault.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pushback::cli
