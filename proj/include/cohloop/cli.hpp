#pragma once

#include <iosfwd>

namespace cohloop {

/// Entry point of the command line tool, factored out of main() so tests can
/// drive it in process.  Returns the process exit code: 0 on success, 1 when
/// a requested check fails, 2 on usage or input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cohloop
