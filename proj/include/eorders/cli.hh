/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EORDERS_CLI_HH
#define EORDERS_CLI_HH 1

#include <iosfwd>
#include <string>
#include <vector>

namespace eorders
{
    namespace exit_code
    {
        inline constexpr int ok = 0;
        inline constexpr int negative = 1;
        inline constexpr int budget = 2;
        inline constexpr int usage = 64;
        inline constexpr int parse = 65;
        inline constexpr int infeasible = 66;
    }

    /// args excludes the program name.
    auto dispatch(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

    /**
     * Runs every golden case in dir: NAME.args holds one argument per line,
     * with {fixtures} standing for dir/fixtures, and NAME.out the expected
     * standard output followed by a final "exit=<code>" line. Prints one
     * PASS/FAIL line per case and returns the number of failures.
     */
    auto run_golden(const std::string & dir, const std::string & filter, std::ostream & out) -> int;

    /// Expected-output text for one case, as run_golden compares it.
    auto golden_output(const std::vector<std::string> & args) -> std::string;
}

#endif
