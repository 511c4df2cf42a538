#include <vicheck/cli.hh>

#include <iostream>

auto main(int argc, char ** argv) -> int
{
    return vicheck::run_cli(argc, argv, std::cout, std::cerr);
}
