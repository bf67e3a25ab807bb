/// @file cli.hpp
/// @brief Command-line entry point: simulate, sweep, lp-check, speed-test, gates, version

#pragma once

#include <iosfwd>

namespace hns::cli {

enum ExitCode { kOk = 0, kValidation = 2, kBlowUp = 3, kInternal = 4 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hns::cli
