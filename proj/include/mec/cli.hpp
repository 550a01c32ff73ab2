#pragma once

namespace mec {

// Exit codes: 0 success (and MDS verdicts), 2 verified not MDS, 1 any error.
int run_cli(int argc, char** argv);

}  // namespace mec
