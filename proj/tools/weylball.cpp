#include "weylball/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return wb::run_cli(argc, argv, std::cout, std::cerr); }
