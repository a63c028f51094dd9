#include <iostream>

#include "kup/cli.hpp"

int main(int argc, char** argv) { return kup::run_cli(argc, argv, std::cout, std::cerr); }
