#include <iostream>

#include "transit/cli/cli.hpp"

int main(int argc, char** argv) { return transit::cli::run_cli(argc, argv, std::cout, std::cerr); }
