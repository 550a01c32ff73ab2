#include "mec/cli.hpp"

int main(int argc, char** argv) { return mec::run_cli(argc, argv); }
