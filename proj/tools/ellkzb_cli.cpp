#include <iostream>
#include <vector>

#include "ellkzb/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ellkzb::run_cli(args, std::cout, std::cerr);
}
