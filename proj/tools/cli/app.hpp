#pragma once

#include <iosfwd>

namespace ssgauss::cli {

/// Parses argv, resolves defaults < SSGAUSS_SEED < config file < flags and
/// runs the subcommand. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ssgauss::cli
