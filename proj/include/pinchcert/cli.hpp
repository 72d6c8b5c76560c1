#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pinchcert::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 2;       // validation, parse or domain error
inline constexpr int kEmpty = 3;         // no rows to emit
inline constexpr int kInconclusive = 4;  // certificate without m_star
}  // namespace exit_code

struct CliEnvironment {
    // Raw value of PINCHCERT_PRECISION_GUARD, if set.
    std::optional<std::string> precision_guard;
};

CliEnvironment environment_from_process();

struct CliResult {
    int exit_code = 0;
    std::string out;  // the document (empty when written to --output)
    std::string err;  // diagnostics
};

// Runs one command. `args` excludes the program name.
CliResult run_cli(const std::vector<std::string>& args, const CliEnvironment& env = {});

}  // namespace pinchcert::cli
