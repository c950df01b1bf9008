#include <iostream>
#include <string>
#include <vector>

#include "pgtd/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pgtd::run_cli(args, std::cout, std::cerr);
}
