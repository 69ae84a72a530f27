#include <iostream>
#include <string>
#include <vector>

#include "scatdeco/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return scatdeco::cli::run(args, std::cout, std::cerr);
}
