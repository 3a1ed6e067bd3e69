#pragma once

#include <iosfwd>

namespace bose2d::cli {

/// Exit codes: 0 success, 1 domain/validity error or failed check, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bose2d::cli
