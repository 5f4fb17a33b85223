#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chambercross/cli.hpp"
#include "chambercross/polyalg.hpp"
#include "chambercross/wallcross.hpp"

using namespace chambercross;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "chambercross");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body)
{
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path.string();
}

const json* chamber_with_volume(const json& doc, const std::string& volume)
{
    for (const auto& ch : doc["chambers"])
        if (ch["volume_poly"] == volume)
            return &ch;
    return nullptr;
}

QuasiPoly from_json_cosets(const json& qp, std::size_t rank)
{
    std::vector<CosetPolynomial> cosets;
    for (const auto& c : qp["cosets"])
        cosets.push_back({c["residue"].get<IntVec>(), parse_poly(c["poly"].get<std::string>(), rank)});
    return QuasiPoly::from_cosets(rank, qp["period"].get<unsigned>(), cosets);
}

} // namespace

TEST_CASE("solve documents")
{
    auto a2 = cli({"solve", "--preset", "A2"});
    REQUIRE(a2.code == 0);
    auto doc = json::parse(a2.out);
    CHECK(doc["chambers"].size() == 2);
    const json* c2 = chamber_with_volume(doc, "a1 + a2");
    REQUIRE(c2);
    CHECK((*c2)["partition_qp"]["cosets"][0]["poly"] == "a1 + a2 + 1");

    auto b2 = cli({"solve", "--preset", "B2"});
    REQUIRE(b2.code == 0);
    doc = json::parse(b2.out);
    const json* c3 = chamber_with_volume(doc, "1/4*a1^2 + 1/2*a1*a2 + 1/4*a2^2");
    REQUIRE(c3);
    CHECK((*c3)["partition_qp"]["period"] == 2);
    CHECK(from_json_cosets((*c3)["partition_qp"], 2) ==
          parse_quasi("1/4*a1^2 + 1/2*a1*a2 + 1/4*a2^2 + a1 + a2 + 7/8 + 1/8*E(2)^(a1+a2)", 2));

    auto unit = temp_file("cc_unit.json", R"({"name": "unit", "vectors": [[1, 0], [0, 1]]})");
    auto u = cli({"solve", "--input", unit});
    REQUIRE(u.code == 0);
    doc = json::parse(u.out);
    REQUIRE(doc["chambers"].size() == 1);
    CHECK(doc["chambers"][0]["volume_poly"] == "1");
    CHECK(doc["chambers"][0]["partition_qp"]["cosets"][0]["poly"] == "1");
}

TEST_CASE("output is deterministic and re-parses")
{
    CHECK(cli({"solve", "--preset", "B3"}).out == cli({"solve", "--preset", "B3"}).out);

    auto r = cli({"solve", "--preset", "B2", "--shift-form"});
    REQUIRE(r.code == 0);
    auto doc = json::parse(r.out);
    Solver solver;
    auto sol = solver.solve(validate_config({{1, 0}, {0, 1}, {1, 1}, {1, -1}}));
    for (const auto& ch : doc["chambers"]) {
        auto id = ch["id"].get<std::size_t>();
        CHECK(parse_poly(ch["volume_poly"].get<std::string>(), 2) == sol->volume[id]);
        CHECK(ch["partition_qp"]["form"] == "shifts");
        CHECK(parse_quasi(ch["partition_qp"]["expression"].get<std::string>(), 2) == sol->partition[id]);
    }
}

TEST_CASE("eval and count")
{
    auto b2 = cli({"count", "--preset", "B2", "--point", "1,1", "--point", "0,0"});
    REQUIRE(b2.code == 0);
    auto doc = json::parse(b2.out);
    CHECK(doc["results"][0]["partition"] == "3");
    CHECK(doc["results"][0]["brute_count"] == "3");
    CHECK(doc["results"][1]["partition"] == "1");
    // (1,1) lies on a wall: the lowest chamber whose closure holds it
    CHECK(doc["results"][0]["chamber"] == doc["results"][0]["closure_chambers"][0]);

    auto a2 = cli({"eval", "--preset", "A2", "--point", "2,1", "--point", "-1,3"});
    REQUIRE(a2.code == 0);
    doc = json::parse(a2.out);
    CHECK(doc["results"][0]["partition"] == "3");
    CHECK(doc["results"][0]["brute_count"] == "3");
    CHECK(doc["results"][1]["chamber"] == 0);
    CHECK(doc["results"][1]["partition"] == "0");

    auto text = cli({"count", "--preset", "A3", "--point", "2,1,1", "--format", "text"});
    CHECK(text.code == 0);
    CHECK(text.out.find("k = ") != std::string::npos);

    // a proper sublattice: points off Z Phi count zero
    auto even = temp_file("cc_even.json", R"({"vectors": [[2, 0], [0, 2], [2, 2]]})");
    auto e = cli({"count", "--input", even, "--point", "4,2", "--point", "3,2"});
    REQUIRE(e.code == 0);
    doc = json::parse(e.out);
    CHECK(doc["results"][0]["partition"] == "2");
    CHECK(doc["results"][1]["partition"] == "0");
    CHECK(doc["results"][1]["brute_count"] == "0");
}

TEST_CASE("validation errors exit with 1")
{
    CHECK(cli({"solve", "--preset", "C3"}).code == kExitValidation);
    CHECK(cli({"solve"}).code == kExitValidation);
    CHECK(cli({"solve", "--preset", "A2", "--random", "2x4"}).code == kExitValidation);
    CHECK(cli({"frobnicate", "--preset", "A2"}).code == kExitValidation);
    CHECK(cli({"count", "--preset", "A2", "--point", "1,2,3"}).code == kExitValidation);
    CHECK(cli({"count", "--preset", "A2", "--point", "1/2,1"}).code == kExitValidation);
    CHECK(cli({"count", "--preset", "A2"}).code == kExitValidation);

    auto rational = temp_file("cc_rational.json", R"({"vectors": [[1, 0.5], [0, 1]]})");
    CHECK(cli({"solve", "--input", rational}).code == kExitValidation);
    auto quoted = temp_file("cc_quoted.json", R"({"vectors": [["1/2", 1], [0, 1]]})");
    CHECK(cli({"solve", "--input", quoted}).code == kExitValidation);
    auto line = temp_file("cc_line.json", R"({"vectors": [[1, 0], [-1, 0]]})");
    auto r = cli({"solve", "--input", line});
    CHECK(r.code == kExitValidation);
    CHECK(!r.err.empty());
    CHECK(cli({"solve", "--input", "/nonexistent/cc.json"}).code == kExitValidation);
    CHECK(cli({"verify", "--random", "2by5"}).code == kExitValidation);
}

TEST_CASE("verify")
{
    auto b2 = cli({"verify", "--preset", "B2"});
    CHECK(b2.code == 0);
    auto doc = json::parse(b2.out);
    CHECK(doc["passed"] == true);
    CHECK(doc["suites"].size() >= 10);

    auto a3 = cli({"verify", "--preset", "A3", "--format", "text", "--budget", "20"});
    CHECK(a3.code == 0);
    CHECK(a3.out.find("all suites passed") != std::string::npos);

    auto rnd = cli({"verify", "--random", "2x5", "--seed", "1"});
    CHECK(rnd.code == 0);
    CHECK(json::parse(rnd.out)["config"] == "random-2x5-1");

    setenv("CHAMBERCROSS_SEED", "4", 1);
    auto env = cli({"chambers", "--random", "2x4"});
    unsetenv("CHAMBERCROSS_SEED");
    REQUIRE(env.code == 0);
    CHECK(json::parse(env.out)["config"]["name"] == "random-2x4-4");
}
