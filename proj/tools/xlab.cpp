#include <iostream>

#include "xlab/cli.hpp"

int main(int argc, char** argv) { return xlab::cli::main(argc, argv, std::cout, std::cerr); }
