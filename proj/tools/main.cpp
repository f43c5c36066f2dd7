#include <iostream>
#include <string>
#include <vector>

#include "gridposet/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return gridposet::cli::run(args, std::cout, std::cerr);
}
