#include "critint/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return critint::cli::run(argc, argv, std::cout, std::cerr); }
