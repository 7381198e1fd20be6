#include <iostream>

#include "siggm/commands.hpp"

int main(int argc, char** argv) { return siggm::cli::run(argc, argv, std::cout, std::cerr); }
