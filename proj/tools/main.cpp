#include <iostream>

#include "infomarket/cli.hpp"

int main(int argc, char** argv) { return infomarket::cli::main(argc, argv, std::cout, std::cerr); }
