#include <iostream>

#include "spectree/cli.hpp"

int main(int argc, char** argv) { return spectree::cli_main(argc, argv, std::cout, std::cerr); }
