#ifndef DIMON_CLI_HPP_
#define DIMON_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace dimon::cli {

  // Runs one command; `args` excludes the program name.  Returns 0 iff every
  // verdict the command reports is PASS.
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace dimon::cli

#endif  // DIMON_CLI_HPP_
