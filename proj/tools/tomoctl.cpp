#include <iostream>

#include "abeltomo/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return abeltomo::cli::run(args, std::cout, std::cerr);
}
