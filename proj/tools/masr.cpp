#include <iostream>

#include "masr/cli.hpp"

int main(int argc, char** argv) { return masr::run_cli(argc, argv, std::cout, std::cerr); }
