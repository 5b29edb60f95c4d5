#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace phgc {

/// Runs one phgc invocation. Exit status: 0 clean (warnings allowed),
/// 1 when an error was reported, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phgc
