#pragma once

#include <iosfwd>

namespace ffbm {

// Entry point of the `ffbm` tool.  Returns 0 on success, 1 on a usage error,
// 2 on a data error and 3 when a chain hits a non-finite objective.
int cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ffbm
