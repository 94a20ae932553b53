#include <iostream>

#include "lpsld_cli/cli.hpp"

int main(int argc, char** argv) {
    return lpsld::cli::run(argc, argv, std::cout, std::cerr);
}
