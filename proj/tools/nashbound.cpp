#include <iostream>

#include "nashbound/cli.hpp"

int main(int argc, char** argv) { return nashbound::cli::run(argc, argv, std::cout, std::cerr); }
