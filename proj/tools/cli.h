// The minepred command-line interface, callable in-process.

#ifndef MINEPRED_TOOLS_CLI_H_
#define MINEPRED_TOOLS_CLI_H_

namespace minepred {

// Exit codes: 0 when the requested artifacts were fully written, 1 on a
// runtime failure (partial outputs are removed), CLI11's parse-error codes
// (>= 100) on bad usage.
int RunCli(int argc, const char* const* argv);

}  // namespace minepred

#endif  // MINEPRED_TOOLS_CLI_H_
