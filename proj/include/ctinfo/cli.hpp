#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ctinfo {

/// Entry point behind the ctinfo binary. stdout carries data only, stderr
/// carries diagnostics. Returns 0 on success, 1 on usage errors, 2 on
/// numeric non-convergence.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ctinfo
