#include <cusp/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return cusp::cli::run(argc, argv, std::cout, std::cerr); }
