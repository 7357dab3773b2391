#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ballmap {

// exit code 0 on success, 1 on a structured domain failure, 2 on usage or
// parse problems; args excludes the program name
int cli_run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

int cli_run(int argc, char** argv);

}  // namespace ballmap
