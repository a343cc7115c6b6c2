#include <iostream>
#include <string>
#include <vector>

#include "coenroll/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return coenroll::run_cli(args, std::cout, std::cerr);
}
