#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fnops/cli.hpp"

using nlohmann::json;

static std::tuple<int, std::string, std::string> run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = fnops::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

TEST_CASE("trees enum lists the published dimension-3 row") {
    auto [code, out, err] = run({"trees", "enum", "--dim", "3"});
    CHECK(code == 0);
    std::istringstream is(out);
    std::string line;
    int count = 0;
    while (std::getline(is, line)) {
        auto j = json::parse(line);
        CHECK(j["dim"] == 3);
        ++count;
    }
    CHECK(count == 8);

    auto [code2, out2, err2] = run({"trees", "enum", "--dim", "1", "--arity", "3"});
    CHECK(code2 == 0);
    CHECK(json::parse(out2)["barcode"] == "[1|2|3]");
}

TEST_CASE("diff emits the linear boundary") {
    auto [code, out, err] = run({"diff", "--barcode", "[1|2||3]", "--linear-only"});
    CHECK(code == 0);
    auto j = json::parse(out);
    CHECK(j["schema"] == 1);
    auto terms = j["boundary"]["terms"];
    REQUIRE(terms.size() == 3);
    std::map<std::string, long long> got;
    for (const auto& t : terms) got[t["term"]] = t["coef"].get<long long>();
    CHECK(got["[1|2|3]"] == 1);
    CHECK(got["[1|3|2]"] == -1);
    CHECK(got["[3|1|2]"] == 1);
}

TEST_CASE("diff with signs matches the published hexagon") {
    auto [code, out, err] = run({"diff", "--barcode", "[1|2||3]"});
    CHECK(code == 0);
    auto j = json::parse(out);
    CHECK(j["boundary"]["terms"].size() == 6);
}

TEST_CASE("classify reports the Tamarkin witness") {
    auto [code, out, err] = run({"classify", "--arity", "6", "--height", "2"});
    CHECK(code == 0);
    auto j = json::parse(out);
    CHECK(j["regular"] == false);
    CHECK(j["witness"] == "[1|2||3|4||5|6]");
    CHECK(j["d_crit"] == 6);

    auto [code2, out2, err2] = run({"classify", "--arity", "5", "--height", "2"});
    auto j2 = json::parse(out2);
    CHECK(j2["regular"] == true);
    CHECK(j2["d_crit"] == "inf");
}

TEST_CASE("bad-cell emits certificates") {
    auto [code, out, err] = run({"bad-cell", "--arity", "4", "--height", "3"});
    CHECK(code == 0);
    auto j = json::parse(out);
    CHECK(j["witness"] == "[1|2|||3|4]");
    CHECK(j["dim"] == 4);
    CHECK(j["source_target_count"].get<long long>() > 0);
    bool found = false;
    for (const auto& c : j["source_target"])
        if (c["m"] == 2 && c["amputated"] == "[1||2]") found = true;
    CHECK(found);
}

TEST_CASE("counterterm verification through a file") {
    {
        std::ofstream f("/tmp/fnops_u_prime.json");
        f << R"(["[[1|||3]|[4||2]]", "[[1||3]|[2|||4]]"])";
    }
    auto [code, out, err] = run({"counterterm", "--barcode", "[1|2|||3|4]", "--verify",
                                 "/tmp/fnops_u_prime.json"});
    CHECK(code == 0);
    CHECK(json::parse(out)["verified"] == true);

    auto [code2, out2, err2] = run({"counterterm", "--barcode", "[1|2|||3|4]"});
    CHECK(code2 == 0);
    auto j2 = json::parse(out2);
    CHECK(j2["verified"] == true);
    CHECK(j2["counterterm"].size() >= 1);
}

TEST_CASE("homology lines") {
    auto [code, out, err] = run({"homology", "--arity", "3", "--height", "inf",
                                 "--dmax", "3"});
    CHECK(code == 0);
    std::istringstream is(out);
    std::string line;
    std::map<int, long long> ranks;
    while (std::getline(is, line)) {
        auto j = json::parse(line);
        ranks[j["degree"].get<int>()] = j["rank"].get<long long>();
        CHECK(j["torsion"].empty());
    }
    CHECK(ranks[1] == 2);
    CHECK(ranks[2] == 0);
}

TEST_CASE("lie subcommands") {
    {
        std::ofstream f("/tmp/fnops_lie.json");
        f << R"({"n": 2, "terms": [{"word": [1,2], "coef": 1}, {"word": [2,1], "coef": -1}]})";
    }
    auto [code, out, err] = run({"lie", "ree", "--n", "2", "--input", "/tmp/fnops_lie.json"});
    CHECK(code == 0);
    CHECK(json::parse(out)["lie_element"] == true);

    auto [code2, out2, err2] =
        run({"lie", "coords", "--n", "2", "--input", "/tmp/fnops_lie.json"});
    CHECK(code2 == 0);
    auto j2 = json::parse(out2);
    CHECK(j2["member"] == true);
    CHECK(j2["coordinates"].size() == 1);

    auto [code3, out3, err3] = run({"lie", "quotient", "--n", "3"});
    CHECK(code3 == 0);
    std::istringstream is(out3);
    std::string line;
    int lines = 0;
    while (std::getline(is, line)) {
        auto j = json::parse(line);
        CHECK(j["quotient_rank"] == 2);
        ++lines;
    }
    CHECK(lines == 2);   // plain and signed variants
}

TEST_CASE("exit codes") {
    auto [bad_barcode, o1, e1] = run({"diff", "--barcode", "[1|2", "--linear-only"});
    CHECK(bad_barcode == 1);
    auto [capacity, o2, e2] = run({"diff", "--barcode", "[1|2||3|4||5|6|7|8|9]"});
    CHECK(capacity == 2);
    auto [usage, o3, e3] = run({"nonsense"});
    CHECK(usage == 1);
}

TEST_CASE("byte-identical output for identical invocations") {
    auto [c1, o1, e1] = run({"trees", "enum", "--dim", "4"});
    auto [c2, o2, e2] = run({"trees", "enum", "--dim", "4"});
    CHECK(c1 == 0);
    CHECK(o1 == o2);
    auto [c3, o3, e3] = run({"diff", "--barcode", "[1|2||3]"});
    auto [c4, o4, e4] = run({"diff", "--barcode", "[1|2||3]"});
    CHECK(o3 == o4);
}
