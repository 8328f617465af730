#include <iostream>

#include "pappus/cli.hpp"

int main(int argc, char** argv) { return pappus::run_cli(argc, argv, std::cout, std::cerr); }
