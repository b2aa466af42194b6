#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hexagg::cli {

/// Run one `hexagg` invocation. `args` excludes the program name.
/// Returns 0 on success, 2 on usage errors and 1 on data errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hexagg::cli
