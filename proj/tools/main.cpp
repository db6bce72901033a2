#include <iostream>

#include "structsum/cli/commands.hpp"

int main(int argc, char** argv) { return structsum::cli::run_cli(argc, argv, std::cout, std::cerr); }
