#include <random>

#include "doctest.h"
#include "redenv/pyramids.hpp"

using namespace redenv;

TEST_CASE("pyramid construction and box lookups") {
    SUBCASE("the (1,2,2,4) pyramid") {
        Pyramid P = build_pyramid({1, 2, 2, 4});
        CHECK(P.N == 9);
        // 1-based: row(3) = 2, row(5) = 3, col(5) = 2, col(9) = 4
        CHECK(P.row_of[2] == 1);
        CHECK(P.row_of[4] == 2);
        CHECK(P.col_of[4] == 1);
        CHECK(P.col_of[8] == 3);
    }
    SUBCASE("single row and single column") {
        Pyramid row = build_pyramid({4});
        for (int b = 0; b < 4; ++b) CHECK(row.col_of[b] == b);
        Pyramid col = build_pyramid({1, 1, 1, 1});
        for (int b = 0; b < 4; ++b) CHECK(col.row_of[b] == b);
    }
    SUBCASE("invalid partitions are rejected") {
        CHECK_THROWS(build_pyramid({2, 1}));
        CHECK_THROWS(build_pyramid({0, 1}));
        CHECK_THROWS(build_pyramid({}));
    }
}

TEST_CASE("e_pi and chi_pi") {
    SUBCASE("(1,2,2,4): e_pi = e23 + e45 + e67 + e78 + e89") {
        Pyramid P = build_pyramid({1, 2, 2, 4});
        auto pairs = e_pi(P);
        std::vector<std::pair<int, int>> expect{{1, 2}, {3, 4}, {5, 6}, {6, 7}, {7, 8}};
        CHECK(pairs == expect);
    }
    SUBCASE("single column: e_pi = 0, chi_pi = 0") {
        Pyramid P = build_pyramid({1, 1, 1});
        CHECK(e_pi(P).empty());
        auto gl = make_alg(AlgKind::gl, 3);
        ChiForm chi = chi_pi(*gl, P, 5);
        for (auto v : chi.values) CHECK(v == 0);
    }
    SUBCASE("(2): the regular nilpotent of gl2") {
        Pyramid P = build_pyramid({2});
        auto gl = make_alg(AlgKind::gl, 2);
        ChiForm chi = chi_pi(*gl, P, 5);
        CHECK(chi(gl->matrix_unit_index(1, 0)) == 1);
        CHECK(chi.standard_levi(*gl) == LeviSubset{0});
    }
}

TEST_CASE("tableau predicates on the worked p = 7 example") {
    Pyramid P = build_pyramid({1, 2, 2, 4});
    const u64 p = 7;
    FillingFp A{2, 1, 6, 0, 5, 6, 4, 1, 0};
    CHECK(column_connected_fp(P, A, p));

    // A lift with the published predicate profile.
    FillingZ Ahat{2, 1, 13, 0, 12, -1, 11, 15, 21};
    CHECK(column_connected(P, Ahat));
    CHECK(row_standard(P, Ahat));
    CHECK(column_strict(P, Ahat));

    SUBCASE("single-row pyramids are vacuously column-connected") {
        Pyramid row = build_pyramid({3});
        CHECK(column_connected_fp(row, {0, 5, 2}, p));
    }
}

TEST_CASE("canonical lift") {
    SUBCASE("single box lifts to the least nonnegative residue") {
        Pyramid P = build_pyramid({1});
        CHECK(lift_column_connected(P, {3}, 5) == FillingZ{3});
    }
    SUBCASE("(2) with A = (3,1) at p = 5 lifts to (3,6)") {
        Pyramid P = build_pyramid({2});
        CHECK(lift_column_connected(P, {3, 1}, 5) == FillingZ{3, 6});
    }
    SUBCASE("the worked example lift has the full predicate profile") {
        Pyramid P = build_pyramid({1, 2, 2, 4});
        const u64 p = 7;
        FillingFp A{2, 1, 6, 0, 5, 6, 4, 1, 0};
        FillingZ Ahat = lift_column_connected(P, A, p);
        CHECK(column_connected(P, Ahat));
        CHECK(row_standard(P, Ahat));
        for (int b = 0; b < P.N; ++b)
            CHECK(u64(((Ahat[b] % 7) + 7) % 7) == A[b]);
        // distinct entries
        std::set<long long> seen(Ahat.begin(), Ahat.end());
        CHECK(seen.size() == 9);
        // the insertion shape recovers the sorted partition
        CHECK(rs_shape(Ahat) == std::vector<int>{4, 2, 2, 1});
    }
    SUBCASE("non-column-connected input is rejected") {
        Pyramid P = build_pyramid({1, 1});
        CHECK_THROWS(lift_column_connected(P, {0, 0}, 5));
    }
}

TEST_CASE("rs_shape") {
    CHECK(rs_shape({1, 2, 3, 4, 5}) == std::vector<int>{5});
    CHECK(rs_shape({5, 4, 3, 2, 1}) == std::vector<int>{1, 1, 1, 1, 1});
    CHECK(rs_shape({2, 1, 13, 0, 12, -1, 11, 15, 21}) == std::vector<int>{4, 2, 2, 1});
    CHECK_THROWS(rs_shape({1, 1}));
}

TEST_CASE("centralizer dimensions") {
    SUBCASE("(1,2,2,4): 27 / 18 / 54") {
        CentralizerDims cd = centralizer_dims(build_pyramid({1, 2, 2, 4}), 7);
        CHECK(cd.gl_centralizer == 27);
        CHECK(cd.b_centralizer == 18);
        CHECK(cd.orbit_dim == 54);
        CHECK(cd.min_dim == boost::multiprecision::pow(Int(7), 27));
    }
    SUBCASE("single column: zero orbit") {
        CentralizerDims cd = centralizer_dims(build_pyramid({1, 1, 1}), 5);
        CHECK(cd.gl_centralizer == 9);
        CHECK(cd.orbit_dim == 0);
        CHECK(cd.min_dim == 1);
    }
    SUBCASE("(1,2) of 3: centralizer 5, orbit 4, min_dim 9") {
        CentralizerDims cd = centralizer_dims(build_pyramid({1, 2}), 3);
        CHECK(cd.gl_centralizer == 5);
        CHECK(cd.orbit_dim == 4);
        CHECK(cd.min_dim == 9);
    }
    SUBCASE("formula matches the kernel oracle for every partition of N <= 8") {
        std::function<void(int, int, std::vector<int>&)> rec = [&](int remaining, int maxpart,
                                                                   std::vector<int>& parts) {
            if (remaining == 0) {
                std::vector<int> sorted = parts;
                std::sort(sorted.begin(), sorted.end());
                CHECK_NOTHROW(centralizer_dims(build_pyramid(sorted), 5));
                return;
            }
            for (int next = 1; next <= std::min(remaining, maxpart); ++next) {
                parts.push_back(next);
                rec(remaining - next, next, parts);
                parts.pop_back();
            }
        };
        for (int N = 1; N <= 8; ++N) {
            std::vector<int> parts;
            rec(N, N, parts);
        }
    }
}

TEST_CASE("sigma_check") {
    SUBCASE("the worked (1,2,2,4) lift passes") {
        Pyramid P = build_pyramid({1, 2, 2, 4});
        FillingZ Ahat{2, 1, 13, 0, 12, -1, 11, 15, 21};
        CHECK(sigma_check(P, Ahat));
        CHECK(sigma_check(P, lift_column_connected(P, {2, 1, 6, 0, 5, 6, 4, 1, 0}, 7)));
    }
    SUBCASE("single row increasing passes") {
        CHECK(sigma_check(build_pyramid({3}), {1, 5, 9}));
    }
    SUBCASE("a row-decreasing filling fails") {
        CHECK(!sigma_check(build_pyramid({2}), {5, 1}));
    }
    SUBCASE("repeated entries are rejected") {
        CHECK_THROWS(sigma_check(build_pyramid({2}), {1, 1}));
    }
    SUBCASE("every canonical lift passes: all partitions of N <= 5, randomized at N = 6") {
        std::function<void(int, int, std::vector<int>&, std::vector<std::vector<int>>&)> rec =
            [&](int remaining, int maxpart, std::vector<int>& parts,
                std::vector<std::vector<int>>& out) {
                if (remaining == 0) {
                    auto sorted = parts;
                    std::sort(sorted.begin(), sorted.end());
                    out.push_back(sorted);
                    return;
                }
                for (int next = 1; next <= std::min(remaining, maxpart); ++next) {
                    parts.push_back(next);
                    rec(remaining - next, next, parts, out);
                    parts.pop_back();
                }
            };
        std::vector<std::vector<int>> partitions;
        for (int N = 2; N <= 6; ++N) {
            std::vector<int> tmp;
            rec(N, N, tmp, partitions);
        }
        std::mt19937_64 rng(5);
        for (u64 p : {3ull, 5ull, 7ull}) {
            for (const auto& parts : partitions) {
                Pyramid P = build_pyramid(parts);
                int iters = P.N <= 5 ? 40 : 15;
                for (int iter = 0; iter < iters; ++iter) {
                    // random column-connected filling: pick column tops
                    FillingFp A(P.N, 0);
                    for (int c = 0; c < P.row_lengths.back(); ++c) {
                        u64 top = rng() % p;
                        u64 k = 0;
                        for (int r = 0; r < P.rows(); ++r) {
                            int b = P.box_at(r, c);
                            if (b < 0) continue;
                            A[b] = (top + (p - k % p)) % p;  // top - k mod p
                            ++k;
                        }
                    }
                    REQUIRE(column_connected_fp(P, A, p));
                    FillingZ Ahat = lift_column_connected(P, A, p);
                    CHECK(sigma_check(P, Ahat));
                    auto shape = parts;
                    std::sort(shape.rbegin(), shape.rend());
                    CHECK(rs_shape(Ahat) == shape);
                }
            }
        }
    }
}

TEST_CASE("minimal-dimension classification") {
    SUBCASE("(2) of N = 2: every class qualifies") {
        Pyramid P = build_pyramid({2});
        CHECK(min_dim_classification(P, 5).size() == 15);  // p(p+1)/2 multisets
    }
    SUBCASE("(1,1) of N = 2: exactly p classes") {
        Pyramid P = build_pyramid({1, 1});
        auto classes = min_dim_classification(P, 5);
        CHECK(classes.size() == 5);
        for (const auto& A : classes) CHECK(A[0] == (A[1] + 1) % 5);
    }
    SUBCASE("(1,2) of N = 3 at p = 3: the first-column condition after row permutation") {
        Pyramid P = build_pyramid({1, 2});
        auto classes = min_dim_classification(P, 3);
        for (const auto& A : classes) {
            bool ok = (A[0] == (A[1] + 1) % 3) || (A[0] == (A[2] + 1) % 3);
            CHECK(ok);
        }
        // count: all (a1; a2 <= a3) with the predicate
        std::size_t expect = 0;
        for (u64 a1 = 0; a1 < 3; ++a1)
            for (u64 a2 = 0; a2 < 3; ++a2)
                for (u64 a3 = a2; a3 < 3; ++a3)
                    if (a1 == (a2 + 1) % 3 || a1 == (a3 + 1) % 3) ++expect;
        CHECK(classes.size() == expect);
    }
    SUBCASE("budget refusal") {
        CHECK_THROWS(min_dim_classification(build_pyramid({3, 3, 3}), 7));
    }
}

TEST_CASE("minimal-label base-change pipeline at N = 2") {
    for (u64 p : {3ull, 5ull}) {
        SUBCASE(("p = " + std::to_string(p)).c_str()) {
            SUBCASE("(2): regular nilpotent, all labels") {
                Pyramid P = build_pyramid({2});
                auto classes = min_dim_classification(P, p);
                for (const auto& A : classes) {
                    MinimalLabelReport r = minimal_label_pipeline(P, p, A);
                    CHECK(r.r1_ok);
                    CHECK(!r.undecided);
                    CHECK(r.nonzero);
                    CHECK(r.surjection);
                    CHECK(r.min_dim == p);
                    CHECK(r.annihilator_claims == "not checked");
                }
            }
            SUBCASE("(1,1): chi = 0, one-dimensional modules") {
                Pyramid P = build_pyramid({1, 1});
                for (const auto& A : min_dim_classification(P, p)) {
                    MinimalLabelReport r = minimal_label_pipeline(P, p, A);
                    CHECK(!r.undecided);
                    CHECK(r.nonzero);
                    CHECK(r.surjection);
                    CHECK(r.dim_Lp_chi == 1);
                    CHECK(r.min_dim == 1);
                }
            }
        }
    }
}
