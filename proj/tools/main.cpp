#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return dowker::main_entry(argc, argv, std::cout, std::cerr); }
