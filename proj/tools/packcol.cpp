#include <iostream>

#include "packcol/cli.hpp"

int main(int argc, char** argv) { return packcol::cli::run(argc, argv, std::cout, std::cerr); }
