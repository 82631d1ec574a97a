#include <random>

#include "doctest.h"
#include "redenv/rootdata.hpp"

using namespace redenv;

TEST_CASE("positive roots are height-monotone with D = N(N-1)/2") {
    for (int N : {1, 2, 3, 4, 9}) {
        for (auto ord : {RootOrder::HeightLex, RootOrder::HeightRevLex}) {
            RootData rd(AlgKind::sl, N, ord);
            CHECK(rd.D() == N * (N - 1) / 2);
            for (int r = 0; r + 1 < rd.D(); ++r) CHECK(rd.height(r) <= rd.height(r + 1));
        }
    }
    RootData rd(AlgKind::gl, 3);
    CHECK(rd.pos_root(0) == std::pair<int, int>{0, 1});  // simple roots first
    CHECK(rd.pos_root(1) == std::pair<int, int>{1, 2});
    CHECK(rd.pos_root(2) == std::pair<int, int>{0, 2});
}

TEST_CASE("height") {
    CHECK(root_height(0, 1) == 1);   // (1,2) in 1-based labels
    CHECK(root_height(0, 2) == 2);   // (1,3)
    CHECK(root_height(1, 8) == 7);   // (2,9) in N = 9
    CHECK_THROWS(root_height(3, 3));
    CHECK_THROWS(root_height(5, 2));
}

TEST_CASE("rho") {
    CHECK(rho(2) == WeightZ{-1, -2});
    CHECK(rho(4) == WeightZ{-1, -2, -3, -4});
    // sl restriction: consecutive difference of rho is 1
    auto r = rho(2);
    CHECK(r[0] - r[1] == 1);
}

TEST_CASE("dot action") {
    const int N = 2;
    auto id = WeylElement::identity(N);
    WeightZ lam{5, -3};
    CHECK(dot_action(id, lam) == lam);

    auto s = WeylElement::transposition(N, 0, 1);
    // (a, b) -> (b - 1, a + 1)
    CHECK(dot_action(s, lam) == WeightZ{-4, 6});
    CHECK(dot_action(s, dot_action(s, lam)) == lam);
}

TEST_CASE("dot action is a group action") {
    std::mt19937_64 rng(99);
    const int N = 4;
    for (int iter = 0; iter < 30; ++iter) {
        std::vector<int> p1(N), p2(N);
        for (int i = 0; i < N; ++i) p1[i] = p2[i] = i;
        std::shuffle(p1.begin(), p1.end(), rng);
        std::shuffle(p2.begin(), p2.end(), rng);
        WeylElement w1{p1}, w2{p2};
        WeightZ lam(N);
        for (int i = 0; i < N; ++i) lam[i] = (long long)(rng() % 21) - 10;
        CHECK(dot_action(w1.compose(w2), lam) == dot_action(w1, dot_action(w2, lam)));
        CHECK(dot_action(w1.inverse(), dot_action(w1, lam)) == lam);
    }
}

TEST_CASE("linkage orbits for sl2") {
    RootData rd(AlgKind::sl, 2);
    const u64 p = 5;
    SUBCASE("empty Levi set gives a singleton") {
        auto orbit = linkage_orbit(rd, p, WeightFp{2, 0}, {});
        CHECK(orbit.size() == 1);
    }
    SUBCASE("regular orbit pairs k with p-2-k") {
        // <lambda, alpha_vee> = 2, weight (2, 0)
        auto orbit = linkage_orbit(rd, p, WeightFp{2, 0}, {0});
        REQUIRE(orbit.size() == 2);
        std::vector<u64> keys;
        for (auto& w : orbit) keys.push_back(rd.weight_key_fp(w, p)[0]);
        CHECK(((keys[0] == 1 && keys[1] == 2) || (keys[0] == 2 && keys[1] == 1)));
    }
    SUBCASE("<lambda, alpha_vee> = p - 1 is a fixed point") {
        auto orbit = linkage_orbit(rd, p, WeightFp{4, 0}, {0});
        CHECK(orbit.size() == 1);
    }
    SUBCASE("orbit is closed and contains lambda") {
        for (u64 a = 0; a < p; ++a) {
            WeightFp lam{a, 0};
            auto orbit = linkage_orbit(rd, p, lam, {0});
            bool found = false;
            for (auto& w : orbit) found |= rd.weights_equal_fp(w, lam, p);
            CHECK(found);
            for (auto& w : orbit) {
                auto orbit2 = linkage_orbit(rd, p, w, {0});
                CHECK(orbit2.size() == orbit.size());
            }
        }
    }
}

TEST_CASE("sl weight keys compare consecutive differences") {
    RootData rd(AlgKind::sl, 3);
    CHECK(rd.weights_equal_fp(WeightFp{2, 1, 0}, WeightFp{3, 2, 1}, 5));
    CHECK(!rd.weights_equal_fp(WeightFp{2, 1, 0}, WeightFp{2, 0, 1}, 5));
    RootData gl(AlgKind::gl, 3);
    CHECK(!gl.weights_equal_fp(WeightFp{2, 1, 0}, WeightFp{3, 2, 1}, 5));
}
