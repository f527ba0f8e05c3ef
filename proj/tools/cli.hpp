#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kabelian::cli {

/// Runs one CLI invocation. args excludes the program name. Returns the
/// process exit status: 0 success, 1 negative analysis result (inequivalent
/// words, no power found, Sturmian check violations), 2 usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kabelian::cli
