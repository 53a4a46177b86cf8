#include <iostream>
#include <string>
#include <vector>

#include "sric/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sric::run_cli(args, std::cout, std::cerr);
}
