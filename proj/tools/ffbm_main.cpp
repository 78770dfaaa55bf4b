#include <iostream>

#include "ffbm/cli.hpp"

int main(int argc, char** argv) { return ffbm::cli(argc, argv, std::cout, std::cerr); }
