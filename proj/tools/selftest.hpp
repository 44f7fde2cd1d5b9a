#pragma once

#include <iosfwd>

namespace kse {

/// Internal consistency checks; prints one line per check. Returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace kse
