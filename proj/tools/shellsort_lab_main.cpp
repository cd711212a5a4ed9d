#include <iostream>
#include <string>
#include <vector>

#include "shellsort_lab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return shellsort_lab::cli::run(args, std::cout, std::cerr);
}
