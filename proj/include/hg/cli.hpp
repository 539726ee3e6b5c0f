#pragma once
// Command-line front end: subcommand dispatch over the library pipeline.

#include <iosfwd>
#include <string>
#include <vector>

namespace hg {

// Exit codes: 0 success, 1 domain error (machine-readable `error: <code>: ...`
// line on standard error), 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hg
