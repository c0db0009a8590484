#include <iostream>

#include "tailbound/cli.hpp"

int main(int argc, char** argv) { return tailbound::run_cli(argc, argv, std::cout, std::cerr); }
