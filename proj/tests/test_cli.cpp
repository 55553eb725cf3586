#include <doctest.h>

#include <json.hpp>

#include "isovec/cli.hpp"
#include "isovec/places.hpp"

using namespace isovec;
using nlohmann::json;

namespace {

cli::Options const opts{};

json solve(std::string const & in, int expect)
{
    cli::Outcome o = cli::cmd_solve(in, opts);
    CHECK(o.exit_code == expect);
    return json::parse(o.output);
}

} // namespace

TEST_CASE("solve examples")
{
    json a = solve(R"({"coefficients":["1","1","-2"]})", cli::ok);
    CHECK(a["isotropic"] == true);
    CHECK(a["vector"] == json({"1", "1", "1"}));
    CHECK(a["exact_check"] == true);

    json b = solve(R"({"coefficients":["1","1","1","-7"]})", cli::anisotropic);
    CHECK(b["isotropic"] == false);
    CHECK(b["witness_place"] == "2");
    CHECK_FALSE(b.contains("vector"));

    solve(R"({"coefficients":["3","0"]})", cli::parse_error);
}

TEST_CASE("solve input handling")
{
    json a = solve(R"({"coefficients":[1, -4], "label":"x"})", cli::ok);
    CHECK(a["label"] == "x");
    CHECK(a["vector"] == json({"2", "1"}));
    json r = solve(R"({"coefficients":["1/2","-9/8"]})", cli::ok);
    CHECK(r["vector"] == json({"3", "2"}));
    solve("{", cli::parse_error);
    solve(R"({"coefficients":[]})", cli::parse_error);
    solve(R"({"coefficients":["x"]})", cli::parse_error);
    solve(R"({"coeffs":["1"]})", cli::parse_error);
    json u = solve(R"({"coefficients":["2"]})", cli::anisotropic);
    CHECK(u["witness_place"] == "unary");
}

TEST_CASE("batch exit code is the worst outcome")
{
    json b = solve(R"([{"coefficients":["1","-1"]},{"coefficients":["1","1"]}])", cli::anisotropic);
    REQUIRE(b.is_array());
    CHECK(b.size() == 2);
    CHECK(b[0]["isotropic"] == true);
    CHECK(b[1]["witness_place"] == "inf");
}

TEST_CASE("resource cap maps to exit 4")
{
    cli::Options o;
    o.solver.max_primes = 0;
    // a forced dim-5 instance needs appended primes
    cli::Outcome r = cli::cmd_solve(R"({"coefficients":["14","-30","41","-35","33"]})", o);
    CHECK((r.exit_code == cli::resource_limit || r.exit_code == cli::ok));
}

TEST_CASE("verify examples")
{
    auto v = [](std::string const & in) {
        cli::Outcome o = cli::cmd_verify(in, opts);
        CHECK(o.exit_code == cli::ok);
        return json::parse(o.output)["valid"].get<bool>();
    };
    CHECK(v(R"({"coefficients":["1","1","-2"],"vector":["1","1","1"]})"));
    CHECK_FALSE(v(R"({"coefficients":["1","1","-2"],"vector":["1","1","2"]})"));
    CHECK(v(R"({"coefficients":["1","-4"],"vector":["2","1"]})"));
    CHECK(cli::cmd_verify(R"({"coefficients":["1","-4"],"vector":["2"]})", opts).exit_code == cli::parse_error);
    CHECK(cli::cmd_verify(R"({"coefficients":["1","-4"]})", opts).exit_code == cli::parse_error);
}

TEST_CASE("local examples")
{
    auto local = [](std::string const & in) {
        cli::Outcome o = cli::cmd_local(in, opts);
        CHECK(o.exit_code == cli::ok);
        return json::parse(o.output);
    };
    json a = local(R"({"coefficients":["1","1","1","-7"]})");
    CHECK(a["2"]["isotropic"] == false);
    CHECK(a["7"]["isotropic"] == true);
    CHECK(a["inf"]["isotropic"] == true);

    json b = local(R"({"coefficients":["1","-1"]})");
    for (auto const & [k, v] : b.items())
        CHECK(v["isotropic"] == true);

    json c = local(R"({"coefficients":["1","1"]})");
    CHECK(c["inf"]["isotropic"] == false);

    CHECK(cli::cmd_local("[]", opts).exit_code == cli::parse_error);
}

TEST_CASE("output round-trips through verify")
{
    for (std::string coeffs : {R"(["1","1","1","-6"])", R"(["1","1","1","1","-7"])", R"(["2","3","5","-7","-11","-13"])",
                               R"(["3/4","-3","5/2"])"}) {
        json r = solve(R"({"coefficients":)" + coeffs + "}", cli::ok);
        json doc{{"coefficients", json::parse(coeffs)}, {"vector", r["vector"]}};
        cli::Outcome o = cli::cmd_verify(doc.dump(), opts);
        CHECK(json::parse(o.output)["valid"] == r["exact_check"]);
        CHECK(r["exact_check"] == true);
    }
}

TEST_CASE("solve output is deterministic")
{
    std::string in = R"([{"coefficients":["14","-30","41","-35"]},{"coefficients":["1","1","1","1","-7"]},
                         {"coefficients":["2","3","5","-7","-11","-13"]}])";
    cli::Outcome a = cli::cmd_solve(in, opts), b = cli::cmd_solve(in, opts);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.output == b.output);
}

TEST_CASE("selftest")
{
    cli::Options plain;
    plain.json = false;
    cli::Outcome ok = cli::cmd_selftest(cli::Scale::tiny, false, plain);
    CHECK(ok.exit_code == cli::ok);
    CHECK(ok.output.find("FAIL") == std::string::npos);

    cli::Outcome bad = cli::cmd_selftest(cli::Scale::tiny, true, plain);
    CHECK(bad.exit_code == cli::failure);
    CHECK(bad.output.find("FAIL") != std::string::npos);
    CHECK_FALSE(hilbert_fault());
}
