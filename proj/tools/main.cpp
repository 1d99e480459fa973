#include "fgp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fgp::run_cli(argc, argv, std::cout, std::cerr); }
