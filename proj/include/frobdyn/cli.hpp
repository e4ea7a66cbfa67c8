#pragma once

#include <ostream>

namespace frobdyn {

/// Exit codes: 0 success, 1 mathematical negative, 2 parse or validation
/// error, 3 resource bound exceeded.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frobdyn
