#include <iostream>

#include "ptcavity/cli/commands.hpp"

int main(int argc, char** argv) { return ptcavity::cli::run_cli(argc, argv, std::cout, std::cerr); }
