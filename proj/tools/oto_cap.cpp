#include <iostream>

#include "oto/cli.hpp"

int main(int argc, char** argv) { return oto::cli::run(argc, argv, std::cout, std::cerr); }
