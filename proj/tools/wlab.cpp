#include "wlab/cli.hpp"

int main(int argc, char** argv) { return wlab::cli::main(argc, argv); }
