#pragma once

#include "maxwalk/config.hpp"

#include <iosfwd>

namespace maxwalk {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verify_failed = 1;
inline constexpr int exit_config_error = 2;

/// Runs one mode and writes its files under config.out. Progress goes to `log`.
/// Returns the process exit status; configuration problems throw Error(Errc::config).
int run(const RunConfig& config, std::ostream& log);

} // namespace maxwalk
