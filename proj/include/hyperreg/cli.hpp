#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperreg {

/// Exit codes: 0 pass, 1 verdict failure, 2 usage or input error.
int run(int argc, const char* const* argv);
/// Same driver with explicit streams; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperreg
