#include <iostream>

#include "magictrap/cli.hpp"

int main(int argc, char** argv) { return magictrap::run_cli(argc, argv, std::cout, std::cerr); }
