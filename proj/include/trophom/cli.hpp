#pragma once

#include <ostream>

namespace trophom {

// Exit codes: 0 success, 1 mathematical failure, 2 input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trophom
