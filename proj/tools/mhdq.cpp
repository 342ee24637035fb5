#include <iostream>
#include <string>
#include <vector>

#include "mhdq/cli.hpp"

int main(int argc, char** argv)
{
    const std::vector<std::string> args(argv + 1, argv + argc);
    return mhdq::run_cli(args, std::cout, std::cerr);
}
