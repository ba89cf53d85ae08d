#ifndef SOFIC_CLI_HPP
#define SOFIC_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace sofic {

/// Runs one CLI command. Returns 0 on success, 1 on validation errors and
/// bad input, 2 when a bounded search gave up. Output is byte-stable for
/// identical inputs.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sofic

#endif
