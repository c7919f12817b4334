#pragma once

#include <iosfwd>

namespace iwasawa::cli {

/// Runs the command line. Exit codes: 0 success, 1 a check failed,
/// 2 usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace iwasawa::cli
