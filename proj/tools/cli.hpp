#pragma once

#include <ostream>
#include <string>

#include "vircoh/errors.hpp"
#include "vircoh/graded_ring.hpp"

namespace vircoh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 2 for malformed input, 1 for failed mathematical checks.
int exit_code_for(ErrorCode code);

/// cp:<m> | sphere:<k> | point | file:<path>
ManifoldModel parse_manifold_arg(const std::string& spec);
std::string manifold_display_name(const std::string& spec);

/// VIRCOH_MAX_DIM, default 4096.
std::size_t max_ambient_dim();

}  // namespace vircoh::cli
