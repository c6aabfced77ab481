#include <iostream>

#include "trophom/cli.hpp"

int main(int argc, char** argv) { return trophom::run_cli(argc, argv, std::cout, std::cerr); }
