/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/acceptance.hh>
#include <eorders/cli.hh>

#include <iostream>
#include <string>

auto main(int argc, char * argv[]) -> int
{
    std::string filter = argc > 1 ? argv[1] : "";
    std::string golden = argc > 2 ? argv[2] : EORDERS_GOLDEN_DIR;
    int failures = eorders::run_acceptance(filter, golden + "/fixtures", std::cout);
    std::cout << "#= failures=" << failures << "\n";
    return failures == 0 ? 0 : 1;
}
