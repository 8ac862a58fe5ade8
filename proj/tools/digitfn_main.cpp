#include <iostream>
#include <vector>

#include "digitfn/cli_app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return digitfn::cli::run(args, std::cout, std::cerr);
}
