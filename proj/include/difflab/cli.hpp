// Command-line front end. Streams are injected so tests can drive the CLI
// in-process; the binary in tools/ forwards to this with std::cout/cerr.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace difflab {

// args excludes the program name. Returns the process exit code.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace difflab
