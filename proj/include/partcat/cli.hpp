#pragma once

namespace partcat {

// Command-line front end. Returns the process exit code:
//   0 success (for verify: all checks passed)
//   1 a verify check failed
//   2 input could not be read or parsed
//   3 type or field mismatch
//   4 field characteristic too small for the requested operation
//   5 desk-scale cap exceeded (see --unsafe-large)
//  64 usage error
int run(int argc, const char* const* argv);

}  // namespace partcat
