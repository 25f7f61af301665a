#include <iostream>

#include "tfm/cli.hpp"

int main(int argc, char** argv)
{
    return tfm::run_cli(argc, argv, std::cout, std::cerr);
}
