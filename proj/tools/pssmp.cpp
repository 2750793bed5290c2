#include <iostream>

#include "pssmp/cli.hpp"

int main(int argc, char** argv) { return pssmp::run_cli(argc, argv, std::cout, std::cerr); }
