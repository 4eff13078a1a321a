#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return equistab::cli::run(argc, argv, std::cout, std::cerr); }
