#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flagtriad::cli {

/// Dispatches one CLI invocation.  Returns 0 on success, 1 on domain
/// errors, 2 on usage errors.  All output goes to `out`, diagnostics to
/// `err`; byte-identical output for identical arguments and seeds.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flagtriad::cli
