#pragma once

namespace focklab {

// Batch front-end. Exit codes: 0 success, 1 validation error,
// 2 convergence/truncation failure.
int run_cli(int argc, const char* const* argv);

} // namespace focklab
