#include <iostream>
#include <vector>

#include "sofic/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sofic::run_cli(args, std::cout, std::cerr);
}
