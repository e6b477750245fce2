#include <iostream>

#include "gic/cli.hpp"

int main(int argc, char** argv) { return gic::run_cli(argc, argv, std::cout, std::cerr); }
