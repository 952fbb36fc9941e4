#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "liegrowth/errors.hpp"
#include "liegrowth/series.hpp"

using namespace liegrowth;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Run the installed binary through the shell, stdout captured, stderr dropped.
RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(LIEGROWTH_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch_dir() {
    fs::path d = fs::temp_directory_path() /
                 ("liegrowth-cli-test-" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("word subcommands") {
    RunResult list = run_cli("words list");
    CHECK(list.exit_code == 0);
    CHECK(list.out.find("fibonacci\n") != std::string::npos);
    CHECK(list.out.find("chacon\n") != std::string::npos);

    RunResult comp = run_cli("words complexity --source fibonacci --max 6");
    CHECK(comp.exit_code == 0);
    CHECK(comp.out ==
          "# liegrowth series v1\n# tag: complexity-fibonacci\nn,value\n"
          "1,2\n2,3\n3,4\n4,5\n5,6\n6,7\n");

    RunResult factors = run_cli("words factors --source thue-morse --length 2");
    CHECK(factors.exit_code == 0);
    CHECK(factors.out == "00\n01\n10\n11\n");
}

TEST_CASE("growth and lie subcommands") {
    RunResult growth = run_cli("growth --source fibonacci --max 5");
    CHECK(growth.exit_code == 0);
    CHECK(growth.out.find("# tag: gamma-fibonacci\n") != std::string::npos);
    CHECK(growth.out.find("5,20\n") != std::string::npos);

    RunResult quarter = run_cli("lie quarter --source fibonacci --max 6");
    CHECK(quarter.exit_code == 0);
    CHECK(quarter.out.find("n\tdimA\tcommDim\tbound\tpass\n") == 0);
    CHECK(quarter.out.find("6\t5\t6\t5/4\tpass\n") != std::string::npos);
    CHECK(quarter.out.find("FAIL") == std::string::npos);
}

TEST_CASE("series files round-trip through the qdim subcommand") {
    fs::path dir = scratch_dir();
    fs::path csv = dir / "squares.csv";

    GrowthSeries sq("squares");
    for (long n = 1; n <= 64; ++n) sq.set_value(n, mpz_class(n) * n);
    write_series_csv(csv.string(), sq);

    GrowthSeries back = read_series_csv(csv.string());
    CHECK(back.tag() == "squares");
    CHECK(back.at(7) == 49);
    CHECK(back.samples().size() == 64);

    RunResult qd = run_cli("qdim --level 2 --series " + csv.string());
    REQUIRE(qd.exit_code == 0);
    auto out = nlohmann::json::parse(qd.out);
    CHECK(out["level"] == 2);
    CHECK(out["series"] == "squares");
    CHECK(out["window"]["valid"].get<int>() >= 16);
    CHECK(out["dim"].get<double>() == doctest::Approx(2.0));
    CHECK(out["dimsup"].get<double>() == doctest::Approx(2.0));
    // n = 1 has ln n = 0: flagged out of domain, not fatal
    CHECK(out["alpha_hat"][0]["status"] == 3);

    fs::path bad = dir / "bad.csv";
    std::ofstream(bad) << "not,a,series\n1,2\n";
    CHECK_THROWS_AS(read_series_csv(bad.string()), ValidationError);
    RunResult qbad = run_cli("qdim --level 2 --series " + bad.string());
    CHECK(qbad.exit_code == 1);
}

TEST_CASE("exit codes distinguish failure kinds") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("words complexity --source nosuchword").exit_code == 1);
    CHECK(run_cli("").exit_code == 1);                       // subcommand required
    CHECK(run_cli("words complexity --bogus-flag").exit_code == 1);
    // constant0 is never nilpotent: a stage failure, not bad input
    CHECK(run_cli("monomial nilpotency --source constant0").exit_code == 2);
}

TEST_CASE("config file with command-line override") {
    fs::path dir = scratch_dir();
    fs::path ini = dir / "pipeline.ini";
    std::ofstream(ini) << "[pipeline]\nword=fibonacci\nmax=40\nscan=30\nlevel=2\n";

    // scan < max: rejected up front
    fs::path out1 = dir / "out-rejected";
    RunResult bad = run_cli("--config " + ini.string() + " pipeline --out " + out1.string());
    CHECK(bad.exit_code == 1);
    CHECK_FALSE(fs::exists(out1 / "summary.json"));

    // the flag overrides the config value and the run goes through
    fs::path out2 = dir / "out-ok";
    RunResult good = run_cli("--config " + ini.string() + " pipeline --scan 10000 --out " +
                             out2.string());
    REQUIRE(good.exit_code == 0);
    CHECK(good.out.find("wrote " + out2.string() + "/summary.json") != std::string::npos);
    CHECK(good.out.find("stage word: ok\n") != std::string::npos);
    CHECK(good.out.find("stage qdim: ok\n") != std::string::npos);
    REQUIRE(fs::exists(out2 / "summary.json"));

    std::ifstream in(out2 / "summary.json");
    auto summary = nlohmann::json::parse(in);
    CHECK(summary["schema"] == "liegrowth pipeline-summary v1");
    CHECK(summary["config"]["word"] == "fibonacci");
    CHECK(summary["config"]["N"] == 40);          // from the INI
    CHECK(summary["config"]["qdim_level"] == 2);  // from the INI
    CHECK(summary["config"]["L"] == 10000);       // from the flag
}
