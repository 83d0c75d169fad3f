#include <iostream>

#include "genusforge/cli.hpp"

int main(int argc, char** argv) { return genusforge::run(argc, argv, std::cout, std::cerr); }
