#include <iostream>

#include "olac/cli.hpp"

int main(int argc, char** argv) { return olac::run_cli(argc, argv, std::cout, std::cerr); }
