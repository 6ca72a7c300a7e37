#include <iostream>

#include "orthograph/cli.hpp"

int main(int argc, char** argv) { return orthograph::run_cli(argc, argv, std::cout, std::cerr); }
