#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace cvxset::tools {

struct DiagCheck {
  std::string module;
  std::string name;
  std::function<bool()> run;
};

/// One quick scenario per module, each independent of the others.
std::vector<DiagCheck> diag_checks();

/// Runs every check and prints a table. Returns the number of failures.
int run_diag(std::ostream& out);

}  // namespace cvxset::tools
