#include "hornlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hornlab::cli_main(argc, argv, std::cout, std::cerr); }
