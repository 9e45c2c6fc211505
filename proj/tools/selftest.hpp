#ifndef MIMOQ_TOOLS_SELFTEST_HPP
#define MIMOQ_TOOLS_SELFTEST_HPP

#include <iosfwd>

namespace mimoq::tools {

// Runs the built-in oracle and property checks, printing one PASS/FAIL
// line per check. Returns the number of failed checks.
int run_selftest(std::ostream& os);

}  // namespace mimoq::tools

#endif
