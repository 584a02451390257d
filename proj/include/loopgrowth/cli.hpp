#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loopgrowth::cli {

inline constexpr const char* kSchemaId = "loopgrowth-report/v1";
inline constexpr const char* kEngineVersion = "1.0.0";

inline constexpr std::size_t kSeriesDegreeLimit = 200;
inline constexpr std::size_t kBruteForceDegreeLimit = 40;

enum ExitCode : int {
    kOk = 0,
    kHypothesisOrValidation = 1,
    kParse = 2,
};

/// Runs one command. `args` excludes the program name. The report goes to
/// `out`; `err` receives only human-readable diagnostics.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loopgrowth::cli
