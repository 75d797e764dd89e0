#include "spinlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return spinlab::cli::main_entry(argc, argv, std::cout, std::cerr); }
