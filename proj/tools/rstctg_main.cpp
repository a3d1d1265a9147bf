#include <iostream>

#include "rstctg/cli.hpp"

int main(int argc, char** argv) { return rstctg::run_cli(argc, argv, std::cout, std::cerr); }
