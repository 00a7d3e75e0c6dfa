// Black-box tests of the eulerpi executable: outputs and the exit-code
// contract (0 ok, 1 verification/precision failure, 2 argument error).

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run(const std::string& args) {
    const std::string cmd = std::string(EULERPI_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    auto path = std::filesystem::temp_directory_path() / ("eulerpi_cli_test_" + name);
    std::ofstream(path) << contents;
    return path;
}

} // namespace

TEST(CliPi, CombinedThirtyDigits) {
    const CliResult r = run("pi --digits 30 --method combined");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "3.141592653589793238462643383279\n");
}

TEST(CliPi, OneDigitCaseOne) {
    const CliResult r = run("pi --digits 1 --method case1");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "3.1\n");
}

TEST(CliPi, OutputIsDigitsAndOnePoint) {
    for (const char* method : {"case1", "combined", "machin"}) {
        const CliResult r = run(std::string("pi --digits 77 --method ") + method);
        EXPECT_EQ(r.exit_code, 0);
        EXPECT_TRUE(std::regex_match(r.out, std::regex(R"(3\.[0-9]{77}\n)"))) << r.out;
    }
}

TEST(CliPi, ArgumentErrorsExitTwo) {
    EXPECT_EQ(run("pi --digits 0").exit_code, 2);
    EXPECT_EQ(run("pi --digits -4").exit_code, 2);
    EXPECT_EQ(run("pi --digits ten").exit_code, 2);
    EXPECT_EQ(run("pi").exit_code, 2);
    EXPECT_EQ(run("pi --digits 5 --method leibniz").exit_code, 2);
    EXPECT_EQ(run("pi --digits 500 --max-digits 100").exit_code, 2);
    EXPECT_EQ(run("").exit_code, 2);
    EXPECT_EQ(run("frobnicate").exit_code, 2);
}

TEST(CliPi, JsonReport) {
    const CliResult r = run("pi --digits 40 --method machin --json");
    ASSERT_EQ(r.exit_code, 0);
    ASSERT_EQ(r.out.back(), '\n');
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["method"], "machin");
    EXPECT_EQ(j["requested_digits"], 40);
    EXPECT_GE(j["guaranteed_digits"].get<int>(), 40);
    EXPECT_EQ(j["terms_used"].size(), 2u);
    EXPECT_TRUE(j["error_ulps"].is_number_unsigned());
    EXPECT_TRUE(j["elapsed_ms"].is_number_unsigned());
    EXPECT_EQ(j["value"].get<std::string>().substr(0, 12), "3.1415926535");
}

TEST(CliPi, RepeatedRunsAreByteIdenticalApartFromTiming) {
    EXPECT_EQ(run("pi --digits 60 --method case1").out, run("pi --digits 60 --method case1").out);
    auto payload = [](std::string s) {
        auto j = nlohmann::ordered_json::parse(s);
        j.erase("elapsed_ms");
        return j.dump();
    };
    EXPECT_EQ(payload(run("pi --digits 60 --json").out), payload(run("pi --digits 60 --json").out));
    EXPECT_EQ(run("compare --digits 50 --format json").out, run("compare --digits 50 --format json").out);
}

TEST(CliPi, FixtureComparison) {
    const std::string reference = run("pi --digits 50 --method machin").out;
    const auto good = temp_file("good.txt", "# reference digits\n" + reference.substr(0, 20) + "\n  "
                                                + reference.substr(20) + "\n");
    EXPECT_EQ(run("pi --digits 50 --method combined --fixture " + good.string()).exit_code, 0);

    std::string wrong = reference;
    wrong[30] = wrong[30] == '9' ? '0' : static_cast<char>(wrong[30] + 1);
    const auto bad = temp_file("bad.txt", wrong);
    EXPECT_EQ(run("pi --digits 50 --fixture " + bad.string()).exit_code, 1);

    const auto garbage = temp_file("garbage.txt", "3.14x");
    EXPECT_EQ(run("pi --digits 3 --fixture " + garbage.string()).exit_code, 2);
    EXPECT_EQ(run("pi --digits 3 --fixture /nonexistent/eulerpi").exit_code, 2);
}

TEST(CliArctan, PrintsEachCase) {
    CliResult r = run("arctan --case 1/2 --digits 20");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "0.32175055439664219340\n");
    r = run("arctan --case 1/4 --digits 20");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "0.14189705460416392281\n");
    r = run("arctan --case 1 --digits 10");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "0.7853981633\n");
}

TEST(CliArctan, UnknownCaseExitsTwo) {
    EXPECT_EQ(run("arctan --case 1/3 --digits 10").exit_code, 2);
    EXPECT_EQ(run("arctan --digits 10").exit_code, 2);
}

TEST(CliVerify, AllChecksPassAtFiftyDigits) {
    const CliResult r = run("verify --digits 50");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("PASS factorization"), std::string::npos);
    EXPECT_NE(r.out.find("PASS 2 arctan(1/3) + arctan(1/7) = arctan(1)"), std::string::npos);
    EXPECT_NE(r.out.find("PASS pi case1 vs machin"), std::string::npos);
}

TEST(CliVerify, BelowMinimumDigitsExitsTwo) { EXPECT_EQ(run("verify --digits 5").exit_code, 2); }

TEST(CliVerify, InjectedFaultExitsOne) {
    const CliResult r = run("verify --digits 20 --inject-fault");
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_NE(r.out.find("FAIL 2 arctan(1/3)"), std::string::npos) << r.out;
}

TEST(CliCompare, Formats) {
    CliResult r = run("compare --digits 128 --format csv");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("\neuler_x_quarter,1/1024,~0.332,42,"), std::string::npos) << r.out;
    r = run("compare --digits 10 --format table");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("≈5e9 terms"), std::string::npos) << r.out;
    EXPECT_EQ(run("compare --digits 128 --format xml").exit_code, 2);
    EXPECT_EQ(run("compare --digits 0").exit_code, 2);
}

TEST(CliBench, RunsEachMethod) {
    const CliResult r = run("bench --digits 50");
    EXPECT_EQ(r.exit_code, 0);
    for (const char* m : {"case1", "combined", "machin"}) EXPECT_NE(r.out.find(m), std::string::npos);
}
