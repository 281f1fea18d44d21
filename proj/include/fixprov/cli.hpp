#pragma once

#include <iosfwd>

namespace fixprov {

/// Entry point of the `fixprov` command. Exit codes: 0 ok, 1 usage,
/// 2 evaluation error or failed check, 3 divergence.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fixprov
