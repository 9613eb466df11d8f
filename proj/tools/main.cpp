#include <iostream>

#include "cones/cli.hpp"

int main(int argc, char** argv) { return cones::cli_main(argc, argv, std::cout, std::cerr); }
