// End-to-end checks of the installed command-line tool, driven through the
// shell.  RLGT_CLI_PATH is injected by the build as the path to the freshly
// built binary.

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs a shell command, capturing stdout; stderr flows to the test log.
RunResult run(const std::string& args) {
    const std::string cmd = std::string(RLGT_CLI_PATH) + " " + args;
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    REQUIRE(f.good());
    f << text;
    REQUIRE(f.good());
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

const std::string kDir = "/tmp/";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("construct then verify round trip") {
    const std::string mpath = kDir + "rlgt_cli_rand.txt";
    const auto c = run("construct --type rand -n 16 -k 2 --d 1 --t 100 --alpha 6 --seed 3 -o " +
                       mpath + " 2>/dev/null");
    REQUIRE(c.exit_code == 0);

    const auto v = run("verify " + mpath +
                       " --runlength 1 --cyclic --weight 6 --disjunct 2 2>/dev/null");
    CHECK(v.exit_code == 0);
    CHECK(contains(v.out, "runlength gap=1 cyclic: PASS"));
    CHECK(contains(v.out, "weight cap=6: PASS"));
    CHECK(contains(v.out, "disjunct k=2: PASS"));
}

TEST_CASE("alternate flag spellings drive the same paths") {
    // --scheme/--n/--k, named --check parameters, and --decoder are aliases
    // for --type/-n/-k, the per-check options, and --method.
    const std::string mpath = kDir + "rlgt_cli_alias.txt";
    const auto c = run("construct --scheme randmatrix --n 16 --k 2 --d 1 --target 0.0625 "
                       "--seed 7 -o " + mpath + " 2>/dev/null");
    REQUIRE(c.exit_code == 0);

    const auto v = run("verify " + mpath +
                       " --check runlength --check disjunct --d 1 --k 2 2>/dev/null");
    CHECK(v.exit_code == 0);
    CHECK(contains(v.out, "runlength gap=1 linear: PASS"));
    CHECK(contains(v.out, "disjunct k=2: PASS"));

    // A named check without its parameter, or an unknown name, is a usage error.
    CHECK(run("verify " + mpath + " --check weight 2>/dev/null").exit_code == 2);
    CHECK(run("verify " + mpath + " --check bogus --k 1 2>/dev/null").exit_code == 2);

    const std::string ypath = kDir + "rlgt_cli_alias_y.txt";
    write_file(ypath, "0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 "
                      "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 "
                      "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n");
    const auto d = run("decode --matrix " + mpath + " --outcome " + ypath +
                       " --decoder comp 2>/dev/null");
    CHECK(d.exit_code == 0);
}

TEST_CASE("verify flags a duplicated column with exit code 1") {
    const std::string mpath = kDir + "rlgt_cli_dup.txt";
    write_file(mpath, "3 3 -1 -1\n110\n110\n001\n");
    const auto v = run("verify " + mpath + " --disjunct 1 2>/dev/null");
    CHECK(v.exit_code == 1);
    CHECK(contains(v.out, "disjunct k=1: FAIL"));
    CHECK(contains(v.out, "covered by"));
}

TEST_CASE("decode recovers a support through matrix and outcome files") {
    const std::string mpath = kDir + "rlgt_cli_id.txt";
    const std::string ypath = kDir + "rlgt_cli_y.txt";
    write_file(mpath, "3 3 -1 -1\n100\n010\n001\n");
    write_file(ypath, "1 0 1\n");
    const auto d = run("decode --matrix " + mpath + " --outcome " + ypath + " 2>/dev/null");
    CHECK(d.exit_code == 0);
    CHECK(d.out == "0 2\n");
}

TEST_CASE("ambiguous brute-force decodes exit with code 1") {
    const std::string mpath = kDir + "rlgt_cli_amb.txt";
    const std::string ypath = kDir + "rlgt_cli_amb_y.txt";
    write_file(mpath, "2 2 -1 -1\n11\n00\n");
    write_file(ypath, "1 0\n");
    const auto d = run("decode --matrix " + mpath + " --outcome " + ypath +
                       " --method brute --k 1 2>/dev/null");
    CHECK(d.exit_code == 1);
    CHECK(d.out == "0\n");
}

TEST_CASE("bounds prints the inverted operating point") {
    const auto b = run("bounds -n 16 -k 2 --d 1 --target 0.0625 2>/dev/null");
    CHECK(b.exit_code == 0);
    CHECK(contains(b.out, "min_tests[zero-error] t=100 alpha=6"));
    CHECK(contains(b.out, "lemma1_lb = "));
    CHECK(contains(b.out, "min_tests[spacer] "));
}

TEST_CASE("an unreachable target exits with the infeasibility code") {
    const auto b = run("bounds -n 1000 -k 8 --w 2 --target 1e-12 2>/dev/null");
    CHECK(b.exit_code == 3);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("verify 2>/dev/null").exit_code == 2);               // missing argument
    CHECK(run("bounds -n 4 -k 2 --bogus 2>/dev/null").exit_code == 2);
    // A requested check must exist: verify with no checks is a usage error.
    const std::string mpath = kDir + "rlgt_cli_none.txt";
    write_file(mpath, "1 1 -1 -1\n1\n");
    CHECK(run("verify " + mpath + " 2>/dev/null").exit_code == 2);
}

TEST_CASE("simulate emits the pinned CSV schema") {
    const auto s = run("simulate --experiment avg-case -n 30 -k 2 --d 1 --t 40 --trials 5 "
                       "--seed 1 2>/dev/null");
    CHECK(s.exit_code == 0);
    const std::string header =
        "experiment,n,k,d,w,t,alpha,trials,failures,rate,wilson_lo,wilson_hi,bound,seed";
    REQUIRE(s.out.size() > header.size());
    CHECK(s.out.substr(0, header.size()) == header);
    CHECK(contains(s.out, "\navg-case,30,2,1,-1,40,"));
}

TEST_CASE("sweep emits one CSV row per grid cell") {
    const auto s = run("sweep --regime avg-case --n 16,24 --k 2 --d 1 --target 0.25 --trials 4 "
                       "--seed 2 2>/dev/null");
    CHECK(s.exit_code == 0);
    std::size_t lines = 0;
    for (char ch : s.out) lines += ch == '\n';
    CHECK(lines == 3);  // header + 2 cells
    CHECK(contains(s.out, "avg-case,16,2,1,"));
    CHECK(contains(s.out, "avg-case,24,2,1,"));
}

}  // TEST_SUITE
