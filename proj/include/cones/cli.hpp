#pragma once

#include <ostream>

namespace cones {

/// Entry point for the `cones` tool: run | sweep | reproduce | verify.
/// Returns 0 on success, 1 on a domain error, 2 on a usage error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cones
