#include <iostream>

#include "circlet/cli.hpp"

int main(int argc, char** argv) { return circlet::run_cli(argc, argv, std::cout, std::cerr); }
