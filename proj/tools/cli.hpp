#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace icl {

/// Command dispatch; returns the process exit code: 0 success, 1 validation
/// or semantic error, 2 usage error. Diagnostics go to `err`.
int runCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace icl
