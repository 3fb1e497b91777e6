#include "phasebeam/cli.hpp"

int main(int argc, char** argv) { return phasebeam::cli::main(argc, argv); }
