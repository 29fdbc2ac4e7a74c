// test_report.cpp -- JSON output shape and determinism.

#include "doctest.h"

#include "json.hpp"

#include "twistkh/report.hpp"

using namespace twistkh;

TEST_CASE("homology JSON follows the frozen schema") {
    BigradedHomology h;
    h.free_ranks[{0, -1}] = 1;
    h.free_ranks[{0, 1}] = 1;
    h.torsion[{2, 5, 1}] = 1;
    std::string s = homology_json(h, Flavor::Equivariant, "demo");
    auto j = nlohmann::json::parse(s);
    CHECK(j["command"] == "compute");
    CHECK(j["flavor"] == "equivariant");
    REQUIRE(j["groups"].is_array());
    CHECK(j["groups"].size() == 3);
    for (auto& g : j["groups"]) {
        CHECK(g.contains("h"));
        CHECK(g.contains("q"));
        CHECK(g.contains("free"));
        CHECK(g["torsion"].is_array());
    }
    CHECK(j["poincare"].is_string());
    // Byte determinism.
    CHECK(s == homology_json(h, Flavor::Equivariant, "demo"));
}

TEST_CASE("check report JSON carries pass, vacuous, details and data") {
    CheckReport rep;
    rep.name = "splitting";
    rep.note("p=2: predicted = computed");
    rep.data.push_back({"delta", "q^1"});
    std::string s = check_report_json(rep, "U_fig8");
    auto j = nlohmann::json::parse(s);
    CHECK(j["command"] == "family");
    CHECK(j["check"] == "splitting");
    CHECK(j["pass"] == true);
    CHECK(j["vacuous"] == false);
    CHECK(j["data"]["delta"] == "q^1");
}

TEST_CASE("poincare polynomial is ascending in t then q") {
    BigradedHomology h;
    h.free_ranks[{1, 1}] = 1;
    h.free_ranks[{-2, -5}] = 1;
    h.free_ranks[{1, -3}] = 2;
    std::string p = h.poincare();
    CHECK(p == "t^-2*q^-5 + 2*t^1*q^-3 + t^1*q^1");
}
