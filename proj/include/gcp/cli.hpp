#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcp::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3, kIo = 4 };

// Entry point shared by the gcp executable and the tests. args excludes the
// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcp::cli
