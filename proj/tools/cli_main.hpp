#pragma once

namespace qmetro {

// Entry point shared by the qmetro binary and the CLI tests.
// Returns 0 on success, 2 on configuration errors, 3 on numerical failure.
int cli_main(int argc, const char* const* argv);

}  // namespace qmetro
