#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return bose2d::cli::run(argc, argv, std::cout, std::cerr); }
