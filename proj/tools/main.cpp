#include "gigagap/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gigagap::cli::main(argc, argv, std::cout, std::cerr); }
