#pragma once

#include <string>
#include <vector>

namespace csl::cli {

/// Exit codes: 0 success, 1 failed verdict under --strict, 2 usage/IO error.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace csl::cli
