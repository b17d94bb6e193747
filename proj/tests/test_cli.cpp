#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args)
{
    const std::string cmd = std::string(IFOCK_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("recurrence extraction output")
{
    const auto r = run("jacobi --measure poisson:a=2 --depth 5");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["omega"] == json::array({2.0, 4.0, 6.0, 8.0}));
    CHECK(j["alpha"] == json::array({2.0, 3.0, 4.0, 5.0, 6.0}));
    CHECK(j["lambda"] == json::array({1.0, 2.0, 8.0, 48.0, 384.0}));
    CHECK(j["depth"] == 5);
    CHECK(j["condition_star"]["satisfied"] == true);

    const auto g = run("jacobi --measure gaussian:m=0,var=1 --depth 3");
    REQUIRE(g.exit_code == 0);
    CHECK(json::parse(g.out)["alpha"] == json::array({0.0, 0.0, 0.0}));
}

TEST_CASE("malformed specs exit with the usage code")
{
    CHECK(run("jacobi --measure gaussian:oops --depth 3").exit_code == 2);
    CHECK(run("jacobi --depth 3").exit_code == 2);
    CHECK(run("nonsense").exit_code == 2);
    CHECK(run("verify-all --measure poisson:a=1 --format yaml").exit_code == 2);
}

TEST_CASE("ladder matrix dump")
{
    const auto r = run("fock dump --measure poisson:a=2 --depth 4");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["dim"] == 4);
    const auto& alpha = j["matrices"]["AlphaN"];
    REQUIRE(alpha["dim"] == 4);
    for (int n = 0; n < 4; ++n) {
        CHECK(alpha["data"][n * 4 + n][0] == doctest::Approx(n + 2.0));
        CHECK(alpha["data"][n * 4 + n][1] == 0.0);
    }
    // field matrix is tridiagonal: sub-diagonal ones
    const auto& field = j["matrices"]["field"];
    CHECK(field["data"][1 * 4 + 0][0] == doctest::Approx(1.0));
}

TEST_CASE("transform evaluation")
{
    const auto r = run("sb --measure gaussian:m=0,var=1 --poly family:3 --z 1,0");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["value"][0] == doctest::Approx(1.0));
    CHECK(j["value"][1] == doctest::Approx(0.0));

    // the spelled-out subcommand form works too
    const auto r2 = run("sb eval --measure gaussian:m=0,var=1 --poly family:3 --z 1,0");
    REQUIRE(r2.exit_code == 0);
    CHECK(json::parse(r2.out)["value"][0] == doctest::Approx(1.0));

    // monomial x against the counting measure: 1 + z
    const auto r3 = run("sb --measure poisson:a=1 --poly [0,1] --z 0.25,0");
    CHECK(json::parse(r3.out)["value"][0] == doctest::Approx(1.25));

    // series dump of x^2 under the standard normal: z^2 + 1
    const auto r4 = run("sb --measure gaussian:m=0,var=1 --poly [0,0,1] --series");
    const json s = json::parse(r4.out);
    CHECK(s["coeffs"][0][0] == doctest::Approx(1.0));
    CHECK(s["coeffs"][2][0] == doctest::Approx(1.0));
    CHECK(s["norm"] == doctest::Approx(std::sqrt(3.0)));

    CHECK(run("sb --measure gaussian:m=0,var=1 --poly family:3").exit_code == 2); // no --z
}

TEST_CASE("plane measure verification")
{
    const auto r = run("cmeasure verify --measure poisson:a=1 --max-degree 6 --seed 3");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["gamma_diagonal"] ==
          json::array({1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0}));
    CHECK(j["pass"] == true);
    CHECK(run("cmeasure verify --measure raw:[1,0,1,0,3,0] --max-degree 4").exit_code == 3);
}

TEST_CASE("aggregated run: exit contract and determinism")
{
    const std::string fast = " --depth 10 --max-degree 8 --seed 7";
    CHECK(run("verify-all --measure gaussian:m=0,var=1" + fast + " --out /tmp/ifock_t1.json")
              .exit_code == 0);
    CHECK(run("verify-all --measure gaussian:m=0,var=1" + fast + " --out /tmp/ifock_t2.json")
              .exit_code == 0);
    CHECK(slurp("/tmp/ifock_t1.json") == slurp("/tmp/ifock_t2.json"));

    // a different seed changes the randomized records
    CHECK(run("verify-all --measure gaussian:m=0,var=1 --depth 10 --max-degree 8 --seed 8 "
              "--out /tmp/ifock_t3.json")
              .exit_code == 0);
    CHECK(slurp("/tmp/ifock_t1.json") != slurp("/tmp/ifock_t3.json"));

    // forced failure through a tolerance override
    CHECK(run("verify-all --measure poisson:a=1" + fast + " --tol unitarity=0").exit_code == 1);

    // measure-validity failures
    CHECK(run("verify-all --measure raw:[1,0,-1,0,3,0,15,0,105,0]" + fast).exit_code == 3);

    // a raw moment sequence runs the applicable battery
    CHECK(run("verify-all --measure raw:[1,0,1,0,3,0,15,0,105,0,945,0,10395,0,135135,0] --seed 7")
              .exit_code == 0);

    // csv projection
    const auto csv = run("verify-all --measure gaussian:m=0,var=1" + fast + " --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("check,defect,tolerance,pass\n", 0) == 0);
}

TEST_CASE("config file and environment seed")
{
    {
        std::ofstream f("/tmp/ifock_cfg.json");
        f << R"({"measure":"gaussian:m=0,var=1","depth":10,"max_degree":8,"seed":21})";
    }
    const auto r = run("verify-all --config /tmp/ifock_cfg.json --out /tmp/ifock_c1.json");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(slurp("/tmp/ifock_c1.json"))["config"]["seed"] == 21);

    // environment overrides the config seed
    const std::string cmd = std::string("IFOCK_SEED=22 ") + IFOCK_CLI_PATH +
                            " verify-all --config /tmp/ifock_cfg.json --out /tmp/ifock_c2.json "
                            "2>/dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(json::parse(slurp("/tmp/ifock_c2.json"))["config"]["seed"] == 22);

    // an explicit flag beats both
    const std::string cmd2 = std::string("IFOCK_SEED=22 ") + IFOCK_CLI_PATH +
                             " verify-all --config /tmp/ifock_cfg.json --seed 23 --out "
                             "/tmp/ifock_c3.json 2>/dev/null";
    REQUIRE(std::system(cmd2.c_str()) == 0);
    CHECK(json::parse(slurp("/tmp/ifock_c3.json"))["config"]["seed"] == 23);
}

TEST_SUITE_END();
