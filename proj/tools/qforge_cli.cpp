#include <iostream>

#include "qforge/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qforge::run_cli(args, std::cout, std::cerr);
}
