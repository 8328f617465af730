#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pappus/marked_box.hpp"

namespace pappus {

// Exit codes: 0 pass, 1 check failure or inconclusive, 2 usage, 3 degeneracy.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "default", "symmetric", or six exact points p,q,r,s,t,b separated by commas.
ZBox parse_seed(const std::string& s);

// Writes to a sibling temporary file, then renames over path.
void write_atomic(const std::string& path, const std::string& data);

// Splices key=value lines of every --config file in front of the flags that
// follow the subcommand, so later command-line flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

}  // namespace pappus
