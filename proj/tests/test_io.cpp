#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helmball/io.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace helmball;
using nlohmann::json;

TEST_CASE("domain grammar")
{
    const Domain b = domain_from_json(json::parse(R"({"kind":"ball","center":[0,0],"r":2})"));
    CHECK(*b.analytic_volume() == doctest::Approx(4.0 * std::numbers::pi));
    const Domain x = domain_from_json(json::parse(R"({"kind":"box","low":[0,0,0],"high":[1,2,3]})"));
    CHECK(*x.analytic_volume() == 6.0);
    const Domain t = domain_from_json(json::parse(
        R"({"kind":"translate","of":{"kind":"ball","center":[0,0],"r":1},"by":[0.3,0]})"));
    REQUIRE(t.as_ball());
    CHECK(t.as_ball()->center[0] == 0.3);
    const Domain d = domain_from_json(json::parse(
        R"({"kind":"difference","a":{"kind":"box","low":[-1,-1],"high":[1,1]},"b":{"kind":"ball","center":[0,0],"r":0.5}})"));
    CHECK(d.kind() == DomainKind::difference);
    CHECK(d.contains(Point{0.9, 0.9}));
    CHECK_FALSE(d.contains(Point{0.1, 0.1}));
}

TEST_CASE("domain grammar rejects bad input")
{
    for (const char* bad : {
             R"({"kind":"ball","center":[0,0],"r":1,"colour":"red"})",
             R"({"kind":"ball","center":[0,0]})",
             R"({"kind":"ball","center":[0,0],"r":-1})",
             R"({"kind":"ball","center":"origin","r":1})",
             R"({"kind":"sphere","center":[0,0],"r":1})",
             R"({"kind":"box","low":[0,0],"high":[1]})",
             R"({"kind":"difference","a":{"kind":"ball","center":[0,0],"r":1}})",
             R"({"center":[0,0],"r":1})",
             R"([1,2,3])",
         }) {
        CAPTURE(bad);
        CHECK_THROWS_AS(domain_from_json(json::parse(bad)), SpecError);
    }
}

TEST_CASE("solution grammar")
{
    const SolutionField w = solution_from_json(json::parse(R"({"kind":"plane_wave","lambda":2,"direction":[0,1],"phase":0.5})"));
    CHECK(w.kind() == FieldKind::plane_wave);
    CHECK(w(Point{0, 0.25}) == doctest::Approx(std::cos(1.0)).epsilon(1e-15));
    const SolutionField w0 = solution_from_json(json::parse(R"({"kind":"plane_wave","lambda":1,"direction":[1,0]})"));
    CHECK(w0(Point{0, 0}) == 1.0);
    const SolutionField r = solution_from_json(json::parse(R"({"kind":"radial","lambda":1,"center":[0,0,0]})"));
    CHECK(r.dimension() == 3);
    CHECK(r(Point{0, 0, 0}) == 1.0);
    const SolutionField m = solution_from_json(json::parse(R"({"kind":"membrane","i":2,"j":1,"a":1})"));
    CHECK(m.wavenumber() == doctest::Approx(std::numbers::pi * std::sqrt(5.0)));
    const SolutionField v = solution_from_json(json::parse(R"({"kind":"modified_radial","mu":1,"center":[0,0,0]})"));
    CHECK(v.equation() == Equation::modified_helmholtz);

    for (const char* bad : {
             R"({"kind":"plane_wave","lambda":1,"direction":[1,1]})",
             R"({"kind":"plane_wave","lambda":1,"direction":[1,0],"amplitude":2})",
             R"({"kind":"membrane","i":2.5,"j":1,"a":1})",
             R"({"kind":"radial","lambda":0,"center":[0,0]})",
             R"({"kind":"bessel","lambda":1})",
         }) {
        CAPTURE(bad);
        CHECK_THROWS_AS(solution_from_json(json::parse(bad)), SpecError);
    }
}

TEST_CASE("report JSON round trip")
{
    VerificationReport r;
    r.name = "top";
    r.lhs = 0.1;
    r.rhs = 1.0 / 3.0;
    r.residual = r.lhs - r.rhs;
    r.tolerance = 1e-8;
    r.error_bar = std::numeric_limits<double>::infinity();
    r.verdict = Verdict::inconclusive;
    r.diagnostics["seed"] = std::int64_t{42};
    r.diagnostics["method"] = std::string("monte_carlo");
    r.diagnostics["flag"] = true;
    r.diagnostics["x"] = 2.5;
    VerificationReport c1;
    c1.name = "b";
    c1.verdict = Verdict::fail;
    VerificationReport c2;
    c2.name = "a";
    c2.verdict = Verdict::pass;
    r.children = {c1, c2};

    const json j = report_to_json(r);
    CHECK(j.at("error_bar").is_null());
    CHECK(j.at("children").at(0).at("name") == "a");
    for (const char* key : {"name", "lhs", "rhs", "residual", "tolerance", "error_bar", "verdict", "diagnostics"})
        CHECK(j.contains(key));

    const VerificationReport back = report_from_json(json::parse(j.dump()));
    CHECK(back.name == "top");
    CHECK(back.lhs == r.lhs);
    CHECK(back.rhs == r.rhs);
    CHECK(back.residual == r.residual);
    CHECK(std::isnan(back.error_bar));
    CHECK(back.verdict == Verdict::inconclusive);
    CHECK(back.diagnostics == r.diagnostics);
    REQUIRE(back.children.size() == 2);
    CHECK(back.children[0].name == "a");
    CHECK(report_to_json(back).dump() != "");
    // Serializing a deserialized report is stable.
    CHECK(report_to_json(report_from_json(report_to_json(back))).dump() == report_to_json(back).dump());

    CHECK_THROWS_AS(report_from_json(json::parse(R"({"name":"x","lhs":1,"rhs":1,"residual":0,"tolerance":0,"error_bar":0,"verdict":"maybe"})")),
                    SpecError);
    CHECK_THROWS_AS(report_from_json(json::parse(R"({"name":"x","extra":1})")), SpecError);
}

TEST_CASE("CSV flattening")
{
    VerificationReport parent;
    parent.name = "p";
    parent.lhs = 1.5;
    parent.verdict = Verdict::pass;
    VerificationReport kid;
    kid.name = "k";
    kid.residual = -0.25;
    kid.verdict = Verdict::fail;
    parent.children.push_back(kid);
    VerificationReport other;
    other.name = "a";
    const std::string csv = reports_to_csv({parent, other});
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line == "name,lhs,rhs,residual,tolerance,error_bar,verdict");
    std::getline(is, line);
    CHECK(line == "a,0,0,0,0,0,inconclusive");
    std::getline(is, line);
    CHECK(line == "p,1.5,0,0,0,0,pass");
    std::getline(is, line);
    CHECK(line == "p/k,0,0,-0.25,0,0,fail");
}

TEST_CASE("format_double round-trips")
{
    for (double v : {0.1, 1.0 / 3.0, 3.831705970207512, -1e-300, 6.02e23})
        CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-0.0) == "0");
}
