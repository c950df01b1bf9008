#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pgtd {

/// Command-line entry point; args exclude the program name. Returns the
/// process exit status, writing results to out and errors to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgtd
