#pragma once

namespace latorbit {

// Exit codes: 0 success, 2 usage/config error, 3 enumeration cap reached.
int run_cli(int argc, const char* const* argv);

}  // namespace latorbit
