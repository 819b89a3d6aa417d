#include <iostream>

#include "symplan/cli.hpp"

int main(int argc, char** argv) { return symplan::run_cli(argc, argv, std::cout, std::cerr); }
