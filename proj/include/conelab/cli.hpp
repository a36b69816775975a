#pragma once

namespace conelab {

// Runs one CLI command. Exit codes: 0 success, 2 input error, 3 numeric
// failure. Errors are printed to stderr as "ERROR:<code>:<message>".
int cli_dispatch(int argc, const char* const* argv);

} // namespace conelab
