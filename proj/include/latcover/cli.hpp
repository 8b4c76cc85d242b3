#pragma once

namespace latcover {

// Batch command-line entry point. Reads JSON from a file argument or
// standard input, writes a JSON envelope {status, payload, diagnostics} to
// standard output. Exit codes: 0 = ok/true, 1 = mathematically false (the
// payload carries a witness), 2 = usage or input error.
int cli_main(int argc, char** argv);

}  // namespace latcover
