#include "gpylab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return gpylab::cli::run(argc, argv, std::cout, std::cerr);
}
