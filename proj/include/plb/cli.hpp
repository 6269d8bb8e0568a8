#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "plb/verify.hpp"

namespace plb {

/// Domain spec strings:
///   disc | square | polygon:N | epicycloid:N | csv:PATH
///   snowflake:T:DEPTH[:flat|:tent|:seed=S|:bits=0101...]
struct ParsedDomain {
  DomainSource source;
  std::string label;
};
ParsedDomain parse_domain(const std::string& spec);

/// "a:b:step" -> a, a+step, ..., up to b inclusive.
std::vector<double> parse_range(const std::string& spec);

/// Exit codes of the command-line tool.
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

/// Entry point of `plbounds`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plb
