#include "noa/cli.hpp"

int main(int argc, char** argv) { return noa::cli::run(argc, argv); }
