#include <iostream>

#include "fibdet/cli.hpp"

int main(int argc, char** argv) { return fibdet::run_cli(argc, argv, std::cout, std::cerr); }
