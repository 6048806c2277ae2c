#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fnops {

/* Batch front end.  JSON goes to out, the human summary to err; the
   return value is the process exit status (0 ok, 1 validation, 2
   capacity, 3 internal inconsistency or selftest failure). */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fnops
