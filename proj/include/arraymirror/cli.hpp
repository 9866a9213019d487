#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arraymirror {

// Entry point of the command-line tool. args excludes the program name.
// Returns 0 on success, 1 on validation errors, 2 on numerical failures; on
// error a single line "error code=<Code> message=<text>" goes to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace arraymirror
