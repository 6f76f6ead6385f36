#include <iostream>
#include <vector>

#include "nqg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nqg::run_cli(args, std::cout, std::cerr);
}
