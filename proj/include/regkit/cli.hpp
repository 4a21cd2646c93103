#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace regkit {

// Dispatches one command invocation (argv without the program name).
// Reports go to `out`, diagnostics to `err`. Exit code 0 on success, 1 on
// a verified negative result (rejection, no-code, failing probe, refuted
// frame), 2 on usage or input errors. Output is byte-identical across
// runs for identical inputs.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace regkit
