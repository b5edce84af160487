#include <iostream>

#include "nilgrade/cli.hpp"

int main(int argc, char** argv) { return nilgrade::run_cli(argc, argv, std::cout, std::cerr); }
