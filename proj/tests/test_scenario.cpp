#include "dce/errors.hpp"
#include "dce/scenario.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>

using namespace dce;

namespace {
const char* base = R"(schema: 1
geometry:
  section: rectangular
  Lx: 1
  Ly: 1
  L0: 1
spectrum:
  pol: TE
  omega_max: 4.45
)";
}

TEST_CASE("config round trip") {
    auto c = parse_config(std::string(base) + "drive:\n  eps: 0.001\n  resonance: true\n  periods: 100\n");
    auto again = parse_config(echo_config(c));
    CHECK(again == c);
    CHECK(echo_config(again) == echo_config(c));
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(parse_config("geometry: {section: rectangular}\n"), DomainError);
    CHECK_THROWS_AS(parse_config("schema: 2\n"), DomainError);
    CHECK_THROWS_AS(parse_config("schema: 1\ncolour: blue\n"), DomainError);
    CHECK_THROWS_AS(parse_config("schema: 1\ndrive: {eps: 0.001, speed: 3}\n"), DomainError);
    CHECK_THROWS_AS(parse_config("schema: 1\ndrive: {eps: 0.5}\n"), DomainError);
    CHECK_THROWS_AS(parse_config("schema: 1\ndrive: {Omega: 2, resonance: true}\n"), DomainError);
    CHECK_THROWS_AS(parse_config("schema: 1\ngeometry: {section: hexagonal}\n"), DomainError);
    CHECK_THROWS_AS(parse_config("schema: 1\nnumerics: {N_z: many}\n"), DomainError);
    CHECK_THROWS_AS(parse_config("schema: [1\n"), DomainError);
}

TEST_CASE("spectrum command") {
    auto c = parse_config(base);
    auto r = cmd_spectrum(c);
    REQUIRE(r.files.size() == 1);
    const std::string& csv = r.files[0].text;
    CHECK(csv.rfind("pol,t1,t2,nz,omega [1/length]\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    c.spectrum.omega_max = 1.0;
    auto empty = cmd_spectrum(c);
    CHECK(std::count(empty.files[0].text.begin(), empty.files[0].text.end(), '\n') == 1);
    CHECK(cmd_spectrum(c).files[0].text == empty.files[0].text);
}

TEST_CASE("simulate in a static cavity creates nothing") {
    auto c = parse_config(std::string(base) +
                          "mode: {pol: TE, t1: 1, t2: 0, nz: 1}\n"
                          "drive: {eps: 0, resonance: true, T: 20}\n"
                          "numerics: {N_z: 3, samples: 10}\n");
    auto r = cmd_simulate(c);
    auto doc = nlohmann::json::parse(r.json);
    CHECK(doc["outputs"]["N_total"].get<double>() < 1e-8);
    auto again = cmd_simulate(c);
    CHECK(again.files[0].text == r.files[0].text);
    CHECK(again.files[1].text == r.files[1].text);
}

TEST_CASE("simulate rejects TEM in a hollow cylinder") {
    auto c = parse_config(std::string(base) + "mode: {pol: TEM, t1: 0, t2: 0, nz: 1}\ndrive: {eps: 0.01, Omega: 3, T: 5}\n");
    CHECK_THROWS_AS(cmd_simulate(c), DomainError);
}

TEST_CASE("estimate command") {
    ScenarioConfig c;
    c.task = "estimate";
    c.estimate.a = 1.0;
    auto r = run_task(c);
    CHECK(r.summary.find("log10 N = 43.4") != std::string::npos);
    c.estimate.eps = 0.0;
    CHECK(run_task(c).summary.find("N_max = 1 ") != std::string::npos);
}

TEST_CASE("tem command on a static cavity") {
    auto c = parse_config("schema: 1\ngeometry: {section: coaxial, a: 0.5, b: 1, L0: 1}\n"
                          "drive: {eps: 0, q: 4, T: 10}\n"
                          "tem: {profile_times: [5], profile_points: 11, midpoint_t1: 4, midpoint_samples: 5}\n");
    auto r = cmd_tem(c);
    CHECK(r.files.size() == 2);
    CHECK(r.json.find("\"peaks\": 0") != std::string::npos);
    c.geometry.section = "circular";
    CHECK_THROWS_AS(cmd_tem(c), DomainError);
}
