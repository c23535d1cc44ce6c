#include <iostream>

#include "reglab/cli/app.hpp"

int main(int argc, char** argv) { return reglab::cli::run(argc, argv, std::cout, std::cerr); }
