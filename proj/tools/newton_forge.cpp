#include <iostream>

#include "newton_forge/cli.hpp"

int main(int argc, char** argv) { return newton_forge::cli::run(argc, argv, std::cout, std::cerr); }
