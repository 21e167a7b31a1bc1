#include <iostream>

#include "yigmag/cli.hpp"

int main(int argc, char** argv) { return yigmag::run_cli(argc, argv, std::cout, std::cerr); }
