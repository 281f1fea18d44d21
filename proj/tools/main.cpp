#include <iostream>

#include "fixprov/cli.hpp"

int main(int argc, char** argv) { return fixprov::run_cli(argc, argv, std::cout, std::cerr); }
