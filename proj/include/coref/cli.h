#ifndef COREF_CLI_H_
#define COREF_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace coref::cli {

inline constexpr const char *kToolName = "coref-lab";
inline constexpr const char *kToolVersion = "0.1.0";

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 1;
inline constexpr int kIoError = 2;

// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace coref::cli

#endif  // COREF_CLI_H_
