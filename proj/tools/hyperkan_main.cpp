#include <iostream>
#include <string>
#include <vector>

#include "hyperkan/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hyperkan::run_cli(args, std::cout, std::cerr);
}
