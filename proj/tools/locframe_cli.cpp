#include <iostream>

#include "locframe/cli.hpp"

int main(int argc, char** argv) { return locframe::cli::run(argc, argv, std::cout, std::cerr); }
