/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/acceptance.hh>
#include <eorders/cli.hh>

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

using namespace eorders;
using std::string;
using std::vector;

namespace fs = std::filesystem;

namespace
{
    const string golden = EORDERS_GOLDEN_DIR;
    const string fixtures = golden + "/fixtures";

    struct Run
    {
        int code;
        string out, err;
    };

    auto run(const vector<string> & args) -> Run
    {
        std::ostringstream out, err;
        int code = dispatch(args, out, err);
        return {code, out.str(), err.str()};
    }
}

TEST_SUITE("cli")
{
    TEST_CASE("exit codes")
    {
        auto c = run({"count-classes", "--n", "3"});
        CHECK(c.code == exit_code::ok);
        CHECK(c.out == "1\n");
        CHECK(run({"count-classes", "--n", "4"}).out == "30\n");
        CHECK(run({"count-classes", "--n", "6"}).code == exit_code::infeasible);

        auto b = run({"bounds", "--theorem", "1.2", "--n", "4"});
        CHECK(b.code == exit_code::ok);
        CHECK(b.out.find("log2N=6400\n") == 0);

        auto a = run({"arrows", "--host", fixtures + "/k6.eog", "--target", fixtures + "/tri.eog", "--q", "2"});
        CHECK(a.code == exit_code::ok);
        auto five = run({"arrows", "--host", fixtures + "/k5.eog", "--target", fixtures + "/tri.eog", "--q", "2"});
        CHECK(five.code == exit_code::negative);

        CHECK(run({"arrows", "--bogus"}).code == exit_code::usage);
        CHECK(run({}).code == exit_code::usage);
        CHECK(run({"check-regular", "--host", fixtures + "/r12.eog", "--epsilon", "2", "--seed", "1"}).code
                == exit_code::usage);
        auto p = run({"find", "--host", fixtures + "/broken.eog", "--pattern", fixtures + "/tri.eog"});
        CHECK(p.code == exit_code::parse);
        CHECK(p.err.find("line ") != string::npos);
        CHECK(run({"arrows", "--host", fixtures + "/k6.eog", "--target", fixtures + "/tri.eog", "--q", "2",
                    "--mode", "backtrack", "--node-limit", "1"}).code == exit_code::budget);
        CHECK(run({"--help"}).code == exit_code::ok);
    }

    TEST_CASE("output is deterministic")
    {
        vector<string> gen{"gen", "--n", "9", "--seed", "44"};
        CHECK(run(gen).out == run(gen).out);
        CHECK(run(gen).out != run({"gen", "--n", "9", "--seed", "45"}).out);
        vector<string> reg{"check-regular", "--host", fixtures + "/r12.eog", "--epsilon", "1/2", "--seed", "3"};
        CHECK(run(reg).out == run(reg).out);
    }

    TEST_CASE("selftest filter runs a single criterion")
    {
        auto s = run({"selftest", "--filter", "arrows"});
        CHECK(s.code == exit_code::ok);
        std::istringstream lines(s.out);
        string line;
        int results = 0;
        while (std::getline(lines, line))
            if (line.rfind("PASS", 0) == 0 || line.rfind("FAIL", 0) == 0) {
                ++results;
                CHECK(line.rfind("PASS 1 arrows", 0) == 0);
            }
        CHECK(results == 1);
        CHECK(acceptance_criteria().size() == 11);
    }

    TEST_CASE("golden runner names a corrupted case")
    {
        auto dir = fs::temp_directory_path() / ("eorders-golden-" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::copy(golden, dir, fs::copy_options::recursive);
        {
            std::ofstream f(dir / "count_classes_3.out");
            f << "2\nexit=0\n";
        }
        std::ostringstream out;
        int failures = run_golden(dir.string(), "", out);
        CHECK(failures == 1);
        CHECK(out.str().find("FAIL golden:count_classes_3") != string::npos);
        CHECK(out.str().find("PASS golden:count_classes_4") != string::npos);

        std::ostringstream one;
        CHECK(run_golden(dir.string(), "count_classes_4", one) == 0);
        CHECK(one.str() == "PASS golden:count_classes_4\n");
        fs::remove_all(dir);
    }

    TEST_CASE("installed binary")
    {
        string command = string(EORDERS_BINARY) + " count-classes --n 4";
        auto * pipe = ::popen(command.c_str(), "r");
        REQUIRE(pipe);
        char buffer[64] = {};
        auto got = std::fgets(buffer, sizeof(buffer), pipe);
        int status = ::pclose(pipe);
        REQUIRE(got);
        CHECK(string(buffer) == "30\n");
        CHECK(WEXITSTATUS(status) == 0);
    }
}
