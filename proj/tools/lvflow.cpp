#include "commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return lvflow::app::run(argc, argv, std::cout, std::cerr);
}
