#pragma once

#include <iosfwd>

namespace circgeo::app {

// Full command-line front end; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace circgeo::app
