#include "doctest.h"
#include "redenv/report.hpp"

using namespace redenv;

TEST_CASE("argument parsing") {
    CHECK(parse_alg("sl2") == std::pair<AlgKind, int>{AlgKind::sl, 2});
    CHECK(parse_alg("gl3") == std::pair<AlgKind, int>{AlgKind::gl, 3});
    CHECK_THROWS(parse_alg("so5"));
    CHECK_THROWS(parse_alg("sl1"));

    auto g = make_alg(AlgKind::sl, 2);
    ChiForm chi = parse_chi(*g, 5, "f=1");
    CHECK(chi(g->neg_index(0)) == 1);
    ChiForm chi2 = parse_chi(*g, 5, "f=-1");
    CHECK(chi2(g->neg_index(0)) == 4);
    CHECK(parse_chi(*g, 5, "zero").values == chi_zero(*g, 5).values);
    CHECK(parse_chi(*g, 5, "regular-nilpotent")(g->neg_index(0)) == 1);

    auto g3 = make_alg(AlgKind::gl, 3);
    ChiForm c3 = parse_chi(*g3, 3, "e21=1,e32=2");
    CHECK(c3(g3->matrix_unit_index(1, 0)) == 1);
    CHECK(c3(g3->matrix_unit_index(2, 1)) == 2);

    CHECK(parse_weight(*g, 5, "2") == WeightFp{2, 0});
    CHECK(parse_weight(*g3, 3, "1,0,2") == WeightFp{1, 0, 2});
    CHECK(parse_weight(*g3, 3, "0") == WeightFp{0, 0, 0});
    CHECK_THROWS(parse_weight(*g3, 3, "1,0"));
    CHECK_THROWS(parse_weight(*g3, 3, ""));
}

TEST_CASE("tensor-filt certifies all 27 steps for sl3 at p = 3") {
    TensorFiltArgs args;
    args.alg = "sl3";
    args.p = 3;
    args.chi = "zero";
    args.chi2 = "zero";
    args.lambda = "0";
    args.mu = "0";
    Json rep = cmd_tensor_filtration(args);
    CHECK(report_certified(rep));
    CHECK(rep["results"]["steps_total"] == 27);
    for (const auto& s : rep["results"]["steps"]) CHECK(s["certified"] == true);
}

TEST_CASE("tensor-filt command reproduces the worked example") {
    TensorFiltArgs args;
    args.alg = "sl2";
    args.p = 5;
    args.chi = "f=1";
    args.chi2 = "f=-1";
    args.lambda = "2";
    args.mu = "3";
    Json rep = cmd_tensor_filtration(args);
    CHECK(report_certified(rep));
    CHECK(rep["report_version"] == 1);
    std::vector<u64> got;
    for (const auto& s : rep["results"]["steps"]) got.push_back(s["weight"][0].get<u64>());
    CHECK(got == std::vector<u64>{0, 3, 1, 4, 2});
}

TEST_CASE("JSON reports are deterministic and round-trip") {
    TensorFiltArgs args;
    args.alg = "sl2";
    args.p = 3;
    args.chi = "zero";
    args.chi2 = "zero";
    args.lambda = "1";
    args.mu = "0";
    Json rep = cmd_tensor_filtration(args);
    rep.erase("timing_ms");
    std::string s1 = rep.dump();
    std::string s2 = rep.dump();
    CHECK(s1 == s2);
    Json parsed = Json::parse(s1);
    CHECK(parsed.dump() == s1);
}

TEST_CASE("suite runner") {
    SUBCASE("unknown suite") { CHECK_THROWS(cmd_suite("nope", 5, 0)); }
    SUBCASE("pyramid-1224") {
        Json rep = cmd_suite("pyramid-1224", 7, 0);
        CHECK(report_certified(rep));
        CHECK(rep["results"]["gl_centralizer"] == 27);
        CHECK(rep["results"]["b_centralizer"] == 18);
        CHECK(rep["results"]["orbit_dim"] == 54);
        CHECK(rep["results"]["rs_shape"] == Json::array({4, 2, 2, 1}));
    }
    SUBCASE("example-2-3 flags the reference discrepancy") {
        Json rep = cmd_suite("example-2-3", 5, 0);
        CHECK(report_certified(rep));
        const auto& rd = rep["results"]["reference_discrepancy"];
        CHECK(rd["flag"] == true);
        CHECK(rd["listed_total"] == 21);
        CHECK(rd["computed_total"] == 25);
    }
}
