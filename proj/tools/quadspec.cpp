#include <iostream>
#include <string>
#include <vector>

#include "quadspec/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return quadspec::cli::run(args, std::cout, std::cerr);
}
