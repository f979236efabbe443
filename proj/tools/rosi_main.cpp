#include <iostream>
#include <string>
#include <vector>

#include "rosi/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return rosi::run_cli(args, std::cin, std::cout, std::cerr);
}
