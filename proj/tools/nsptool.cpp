#include "nsp/cli.hpp"

#include <iostream>

int main(int argc, char* argv[])
{
    return nsp::cli::run(argc, argv, std::cout, std::cerr);
}
