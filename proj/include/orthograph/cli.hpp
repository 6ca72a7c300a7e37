#pragma once

#include <ostream>

namespace orthograph {

/// Exit codes: 0 success / orthogonal, 1 not orthogonal / isolated /
/// small algebra, 2 indeterminate / right-invertible endpoint, 3 usage,
/// parse or other errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orthograph
