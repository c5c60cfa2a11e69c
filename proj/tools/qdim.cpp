#include <iostream>

#include "qdim/cli/commands.hpp"

int main(int argc, char** argv) { return qdim::cli::run_cli(argc, argv, std::cout, std::cerr); }
