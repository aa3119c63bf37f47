#include <iostream>

#include "fbmsig_cli/cli.hpp"

int main(int argc, char** argv) { return fbmsig::cli::run(argc, argv, std::cout, std::cerr); }
