#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypertraffic {

/// Entry point of the `hypertraffic` tool; args excludes the program name.
/// Returns 0 on success, 2 on flag or input-parse errors, 3 on engine errors
/// and invariant violations (named on `err`).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypertraffic
