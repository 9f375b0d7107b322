#include <iostream>

#include "zl/commands.hpp"

int main(int argc, char** argv) { return zl::zlab_main(argc, argv, std::cout, std::cerr); }
