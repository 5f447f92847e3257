#include <iostream>
#include <string>
#include <vector>

#include "crep/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return crep::run_cli(args, std::cout, std::cerr);
}
