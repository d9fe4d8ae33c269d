#include <iostream>

#include "goppa/cli.hpp"

int main(int argc, char** argv) {
    return goppa::run_cli(argc, argv, std::cout, std::cerr);
}
