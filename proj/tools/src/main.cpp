#include <iostream>

#include "dhlab/cli.hpp"

int main(int argc, char** argv) { return dhlab::cli::run(argc, argv, std::cout, std::cerr); }
