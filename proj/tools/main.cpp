#include <iostream>

#include "mutascan/pipeline.hpp"

int main(int argc, char** argv) { return mutascan::run_cli(argc, argv, std::cout, std::cerr); }
