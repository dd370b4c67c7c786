#pragma once

#include <string>
#include <vector>

namespace witnesskit {

/// Runs the command-line front end. Exit codes: 0 success, 1 a certification
/// found a violation, 2 usage or precondition error.
int cli_run(const std::vector<std::string>& args);

}  // namespace witnesskit
