/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EORDERS_ACCEPTANCE_HH
#define EORDERS_ACCEPTANCE_HH 1

#include <iosfwd>
#include <string>
#include <vector>

namespace eorders
{
    struct Criterion
    {
        int number;
        const char * tag;
        const char * title;
    };

    auto acceptance_criteria() -> const std::vector<Criterion> &;

    /**
     * One PASS/FAIL line per criterion whose number or tag equals filter
     * (everything when filter is empty). fixtures is the directory holding
     * the golden fixtures used by the determinism check. Returns the number
     * of failures.
     */
    auto run_acceptance(const std::string & filter, const std::string & fixtures, std::ostream & out) -> int;
}

#endif
