#pragma once

namespace holoq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitIo = 4;

/// Entry point shared by the holoq binary and the CLI tests.
int cli_main(int argc, const char* const* argv);

}  // namespace holoq::cli
