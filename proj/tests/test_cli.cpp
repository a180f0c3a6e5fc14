#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helmball/cli.hpp"
#include "helmball/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace helmball;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

const std::string kBall = R"({"kind":"ball","center":[0,0],"r":1})";
const std::string kShifted = R"({"kind":"translate","of":{"kind":"ball","center":[0,0],"r":1},"by":[0.3,0]})";
const std::string kSquare = R"({"kind":"box","low":[0,0],"high":[1,1]})";

}  // namespace

TEST_CASE("specfun")
{
    const Result z = run({"specfun", "zeros", "--nu", "1", "--count", "1"});
    CHECK(z.code == cli::kExitPass);
    const auto rows = csv_rows(z.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"n", "value"});
    CHECK(std::abs(std::stod(rows[1][1]) - 3.831706) <= 1e-6);

    const Result a = run({"specfun", "a", "--m", "2", "--t", "0"});
    CHECK(csv_rows(a.out)[1] == std::vector<std::string>{"0", "1"});
    const Result s = run({"specfun", "a", "--m", "1", "--t", "3.14159265"});
    CHECK(std::abs(std::stod(csv_rows(s.out)[1][1])) <= 1e-8);

    const Result j = run({"specfun", "j", "--nu", "0", "--t-min", "0", "--t-max", "1", "--points", "3", "--format", "json"});
    const auto parsed = nlohmann::json::parse(j.out);
    REQUIRE(parsed.size() == 3);
    CHECK(parsed[0]["value"] == 1.0);
    CHECK(parsed[2]["t"] == 1.0);
}

TEST_CASE("sweep")
{
    const Result r = run({"sweep", "--m", "2", "--t-min", "0", "--t-max", "10", "--points", "101"});
    CHECK(r.code == cli::kExitPass);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 102);
    CHECK(rows[0] == std::vector<std::string>{"t", "a", "b"});
    CHECK(rows[1] == std::vector<std::string>{"0", "1", "1"});
    int sign_changes = 0;
    for (std::size_t k = 2; k < rows.size(); ++k) {
        const double a0 = std::stod(rows[k - 1][1]), a1 = std::stod(rows[k][1]);
        if (sign_changes == 0 && a0 > 0 && a1 < 0) {
            ++sign_changes;
            CHECK(std::stod(rows[k - 1][0]) < 3.831706);
            CHECK(std::stod(rows[k][0]) > 3.831706);
        }
        CHECK(std::stod(rows[k][2]) > std::stod(rows[k - 1][2]));
    }
    CHECK(sign_changes == 1);
}

TEST_CASE("mean-value")
{
    const Result r = run({"mean-value", "--solution", R"({"kind":"plane_wave","lambda":1,"direction":[1,0]})", "--r", "1"});
    CHECK(r.code == cli::kExitPass);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["residual"].get<double>()) <= 1e-9);
    CHECK(j["verdict"] == "pass");
    CHECK(j["diagnostics"].contains("cli.seed"));

    CHECK(run({"mean-value", "--solution", R"({"kind":"radial","lambda":2,"center":[0,0,0]})", "--r", "1e-3"}).code ==
          cli::kExitPass);

    // lambda r at the first zero of J_1: both sides vanish.
    const Result zero =
        run({"mean-value", "--solution", R"({"kind":"plane_wave","lambda":1,"direction":[0,1]})", "--r", "3.831705970207512"});
    CHECK(zero.code == cli::kExitPass);
    CHECK(std::abs(nlohmann::json::parse(zero.out)["lhs"].get<double>()) <= 1e-12);
}

TEST_CASE("characterize")
{
    const Result ball = run({"characterize", "--domain", kBall, "--lambda", "1"});
    CHECK(ball.code == cli::kExitPass);
    CHECK(nlohmann::json::parse(ball.out)["diagnostics"]["outcome"] == "consistent with D = B_r(x0)");

    const Result shifted = run({"characterize", "--domain", kShifted, "--lambda", "1"});
    CHECK(shifted.code == cli::kExitFail);
    const auto js = nlohmann::json::parse(shifted.out);
    CHECK(js["diagnostics"]["outcome"] == "not a ball");
    CHECK(js["diagnostics"]["witness"].get<std::string>().find("radial") == 0);

    const Result csv = run({"characterize", "--domain", kShifted, "--lambda", "1", "--format", "csv"});
    CHECK(csv.out.find("witness: radial") != std::string::npos);

    const Result square = run({"characterize", "--domain", kSquare, "--x0", "0.5,0.5", "--solution",
                               R"({"kind":"membrane","i":2,"j":1,"a":1})", "--solution",
                               R"({"kind":"membrane","i":1,"j":2,"a":1})"});
    CHECK(square.code == cli::kExitInconclusive);
    CHECK(nlohmann::json::parse(square.out)["diagnostics"]["outcome"] == "outside theorem scope");
}

TEST_CASE("membrane")
{
    for (const char* a : {"1", "2"}) {
        const Result r = run({"membrane", "--a", a});
        CHECK(r.code == cli::kExitPass);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(std::abs(j["lhs"].get<double>() - 4.967294) <= 1e-5);
        CHECK(std::abs(j["rhs"].get<double>() - 3.831706) <= 1e-5);
        CHECK(j["children"].size() == 8);
        const VerificationReport back = report_from_json(j);
        CHECK(report_to_json(back).dump(2) + "\n" == r.out);
    }
}

TEST_CASE("other report commands")
{
    CHECK(run({"identity", "--domain", kSquare, "--x0", "0.5,0.5", "--solution",
               R"({"kind":"membrane","i":2,"j":1,"a":1})"})
              .code == cli::kExitPass);
    CHECK(run({"identity", "--domain", kSquare, "--x0", "0.5,0.5", "--solution",
               R"({"kind":"radial","lambda":7.024814731040727,"center":[0.5,0.5]})"})
              .code == cli::kExitFail);
    CHECK(run({"discrepancy", "--domain", R"({"kind":"box","low":[-0.5,-0.5],"high":[0.5,0.5]})", "--lambda", "1",
               "--samples", "1000000"})
              .code == cli::kExitPass);
    CHECK(run({"discrepancy", "--domain", R"({"kind":"box","low":[-0.5,-0.5],"high":[0.5,0.5]})", "--lambda", "1",
               "--samples", "1000000", "--kernel", "b"})
              .code == cli::kExitPass);
    CHECK(run({"flux", "--solution", R"({"kind":"radial","lambda":1,"center":[0,0,0]})", "--r", "1"}).code ==
          cli::kExitPass);
    CHECK(run({"kuran", "--domain", kBall}).code == cli::kExitPass);
    CHECK(run({"theorem1", "--mu", "1", "--r", "1"}).code == cli::kExitPass);
    const Result csv = run({"theorem1", "--mu", "1", "--r", "1", "--format", "csv"});
    CHECK(csv.out.rfind("name,lhs,rhs,residual,tolerance,error_bar,verdict\ntheorem1_identity,", 0) == 0);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"nonsense"}).code == cli::kExitUsage);
    CHECK(run({"specfun", "q", "--t", "1"}).code == cli::kExitUsage);
    CHECK(run({"specfun", "a", "--t", "1"}).code == cli::kExitUsage);
    CHECK(run({"mean-value", "--r", "1"}).code == cli::kExitUsage);
    CHECK(run({"mean-value", "--solution", R"({"kind":"radial","lambda":1,"center":[0,0],"x":1})", "--r", "1"}).code ==
          cli::kExitUsage);
    CHECK(run({"mean-value", "--solution", "{not json", "--r", "1"}).code == cli::kExitUsage);
    CHECK(run({"mean-value", "--solution", R"({"kind":"radial","lambda":1,"center":[0,0]})", "--r", "-1"}).code ==
          cli::kExitUsage);
    CHECK(run({"membrane", "--a", "1", "--format", "xml"}).code == cli::kExitUsage);
    CHECK(run({"kuran", "--domain", kBall, "--lambdas", "0.1,1"}).code == cli::kExitUsage);
    const Result e = run({"characterize", "--domain", kBall});
    CHECK(e.code == cli::kExitUsage);
    CHECK_FALSE(e.err.empty());
}

TEST_CASE("reruns are byte-identical")
{
    const std::vector<std::string> args{"discrepancy", "--domain",
                                        R"({"kind":"difference","a":{"kind":"box","low":[-0.5,-0.5],"high":[0.5,0.5]},"b":{"kind":"ball","center":[0.5,0.5],"r":0.2}})",
                                        "--lambda", "1", "--samples", "200000", "--seed", "17"};
    const Result a = run(args), b = run(args);
    CHECK(a.out == b.out);
    auto csv_args = args;
    csv_args.insert(csv_args.end(), {"--format", "csv"});
    CHECK(run(csv_args).out == run(csv_args).out);
    auto other = args;
    other.back() = "18";
    CHECK(run(other).out != a.out);
}

TEST_CASE("--out writes a file")
{
    const auto path = std::filesystem::temp_directory_path() / "helmball_cli_test.json";
    std::filesystem::remove(path);
    const Result r = run({"membrane", "--a", "1", "--out", path.string()});
    CHECK(r.code == cli::kExitPass);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(nlohmann::json::parse(ss.str())["name"] == "membrane_counterexample");
    std::filesystem::remove(path);
}
