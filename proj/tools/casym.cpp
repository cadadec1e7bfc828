#include <iostream>

#include "casym/cli.hpp"

int main(int argc, char** argv) { return casym::cli::run(argc, argv, std::cout, std::cerr); }
