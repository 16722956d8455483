#include <iostream>

#include "angdil/commands.hpp"

int main(int argc, char** argv) { return angdil::cli::run_cli(argc, argv, std::cout, std::cerr); }
