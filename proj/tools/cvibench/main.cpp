#include <iostream>

#include "cvibench/cli/commands.hpp"

int main(int argc, char** argv) { return cvibench::cli::run(argc, argv, std::cout, std::cerr); }
