#include <iostream>

#include "feedback/cli.hpp"

int main(int argc, char** argv) { return feedback::cli_main(argc, argv, std::cin, std::cout, std::cerr); }
