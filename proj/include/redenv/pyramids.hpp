#pragma once

#include <optional>
#include <string>

#include "redenv/charzero.hpp"
#include "redenv/liealg.hpp"

namespace redenv {

// Left-justified pyramid of a partition p_1 <= ... <= p_r, rows listed top to
// bottom, boxes labelled 1..N row-major (0-based internally).
struct Pyramid {
    std::vector<int> row_lengths;
    int N = 0;
    std::vector<int> row_of, col_of;  // per box

    int rows() const { return int(row_lengths.size()); }
    // Box index at (row, col), or -1.
    int box_at(int row, int col) const;
    // Pairs (upper, lower) of vertically adjacent boxes.
    std::vector<std::pair<int, int>> vertical_pairs() const;
    // Pairs (left, right) of horizontally adjacent boxes.
    std::vector<std::pair<int, int>> horizontal_pairs() const;
};

Pyramid build_pyramid(const std::vector<int>& partition);

using FillingFp = std::vector<u64>;
using FillingZ = std::vector<long long>;

// The nilpotent e_pi = sum e_{ij} over horizontally adjacent boxes (i left of
// j), as index pairs.
std::vector<std::pair<int, int>> e_pi(const Pyramid& P);

// chi_pi = tr(e_pi . -): supported on the negative simple root vectors below
// the diagonal; certified to be in standard Levi form.
ChiForm chi_pi(const LieAlg& gl, const Pyramid& P, u64 p);

bool row_equivalent(const Pyramid& P, const FillingZ& A, const FillingZ& B);
bool row_equivalent_fp(const Pyramid& P, const FillingFp& A, const FillingFp& B, u64 p);
bool column_strict(const Pyramid& P, const FillingZ& A);
bool row_standard(const Pyramid& P, const FillingZ& A);
bool column_connected(const Pyramid& P, const FillingZ& A);
bool column_connected_fp(const Pyramid& P, const FillingFp& A, u64 p);

// Canonical integral lift of a column-connected F_p-filling: per column the
// least lifts consistent with column-connectedness, each column shifted by
// multiples of p until its minimum exceeds the previous column's maximum.
// The result reduces to A mod p and is column-connected, row-standard, with
// strictly separated columns (hence distinct entries).
FillingZ lift_column_connected(const Pyramid& P, const FillingFp& A, u64 p);

// Shape of the Robinson-Schensted insertion tableau of a word of distinct
// integers, as a weakly decreasing partition.
std::vector<int> rs_shape(const std::vector<long long>& word);

struct CentralizerDims {
    long long gl_centralizer = 0;
    long long b_centralizer = 0;
    long long orbit_dim = 0;
    Int min_dim;  // p^{orbit_dim / 2}
};

// Centralizer dimensions by the min(p_i, p_j) formulas, each certified
// against the [Z, e_pi] = 0 kernel oracle over F_p (throws on mismatch).
CentralizerDims centralizer_dims(const Pyramid& P, u64 p);

// For the canonical lift: sorts the entries strictly decreasing into A^0,
// reads off w with a_j = a^0_{w^{-1}(j)}, sets sigma = w_0 w^{-1} and checks
// sigma(i) < sigma(i+1) on all horizontally adjacent pairs; also verifies on
// matrices that conjugating e_pi by the permutation lands strictly above the
// diagonal.
bool sigma_check(const Pyramid& P, const FillingZ& Ahat);

// Canonical form of a filling up to row equivalence: each row sorted.
FillingFp row_sorted(const Pyramid& P, const FillingFp& A, u64 p);

// All fillings (up to row equivalence, canonicalized) that are row-equivalent
// to a column-connected filling. Refuses when p^N exceeds the budget.
std::vector<FillingFp> min_dim_classification(const Pyramid& P, u64 p);

struct MinimalLabelReport {
    FillingFp label;
    FillingZ lift;
    bool r1_ok = false;          // p does not divide N
    bool undecided = false;      // propagated from the window pipeline
    std::string diagnostics;
    std::size_t dim_Lp_chi = 0;  // dim L_p^{chi_pi}(lambda_Ahat - rho)
    bool nonzero = false;
    bool surjection = false;     // onto L_{chi_pi}(A)
    Int min_dim;
    std::string annihilator_claims = "not checked";
};

// End-to-end pipeline: lift the minimal label, form lambda = lambda_Ahat -
// rho, build L_p^{chi_pi}(lambda) by base change from characteristic zero and
// exhibit the surjection onto L_{chi_pi}(A).
MinimalLabelReport minimal_label_pipeline(const Pyramid& P, u64 p, const FillingFp& A,
                                        int depth = 0);

}  // namespace redenv
