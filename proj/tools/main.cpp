#include <iostream>

#include "priceforge/cli.hpp"

int main(int argc, char** argv) { return priceforge::cli::run(argc, argv, std::cout, std::cerr); }
