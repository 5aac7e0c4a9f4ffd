#include <iostream>
#include <string>
#include <vector>

#include "vir/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return vir::run(args, std::cout, std::cerr);
}
