/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/cli.hh>

#include <iostream>
#include <string>
#include <vector>

auto main(int argc, char * argv[]) -> int
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return eorders::dispatch(args, std::cout, std::cerr);
}
