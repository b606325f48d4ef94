#include <iostream>

#include "levywave/cli.hpp"

int main(int argc, char** argv) { return levywave::run_cli(argc, argv, std::cout, std::cerr); }
