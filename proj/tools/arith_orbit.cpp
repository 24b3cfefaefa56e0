#include "arith_orbit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return arith_orbit::run_cli(argc, argv, std::cout, std::cerr); }
