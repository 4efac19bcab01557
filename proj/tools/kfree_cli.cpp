#include <iostream>

#include "kfree/cli.hpp"

int main(int argc, char** argv) { return kfree::cli_main(argc, argv, std::cout, std::cerr); }
