#include <iostream>

#include "chambercross/cli.hpp"

int main(int argc, char** argv)
{
    return chambercross::run_cli(argc, argv, std::cout, std::cerr);
}
