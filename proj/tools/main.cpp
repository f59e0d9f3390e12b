#include <iostream>
#include <string>
#include <vector>

#include "pareto_judge/cli.hpp"

int main(int argc, char** argv)
{
    const std::vector<std::string> args(argv + 1, argv + argc);
    return pareto_judge::cli::run(args, std::cout, std::cerr);
}
