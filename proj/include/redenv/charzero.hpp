#pragma once

#include <set>
#include <stdexcept>

#include "redenv/module.hpp"
#include "redenv/pbw.hpp"
#include "redenv/verma.hpp"

namespace redenv {

// Raised when a windowed computation cannot certify its answer at the given
// depth. Callers may retry with a deeper window or report the diagnosis.
struct UndecidedError : std::runtime_error {
    explicit UndecidedError(const std::string& what) : std::runtime_error(what) {}
};

// The Verma module M(lambda) over Q, truncated to PBW monomials in the
// negative root vectors of total degree <= K. Raising and toral actions are
// exact on the whole window; lowering actions are exact away from the
// boundary band (tracked per column).
struct TruncatedVerma {
    std::shared_ptr<const LieAlg> g;
    WeightQ lambda;
    int K = 0;
    std::vector<std::vector<std::uint32_t>> monos;  // ordered by (degree, lex)
    std::vector<RatMatrix> act;                     // per basis element
    std::vector<std::vector<char>> exact;           // [basis][column]

    std::size_t size() const { return monos.size(); }
    std::size_t index_of(const std::vector<std::uint32_t>& m) const;
    int degree(std::size_t i) const;
    WeightQ weight_of(std::size_t i) const;
};

TruncatedVerma verma_char0(std::shared_ptr<const LieAlg> g, const WeightQ& lambda, int K);

// A windowed quotient of the truncated Verma by a submodule generated by
// singular vectors: models L_R(lambda) = U(g_R) vbar. The carrier basis is a
// subset of the window monomials; denominators of all structure constants are
// collected for the base-change criterion.
struct LatticeModule {
    TruncatedVerma base;
    std::vector<std::size_t> reps;  // monomial indices forming the quotient basis
    std::vector<RatMatrix> act;     // actions on the rep basis
    std::vector<std::vector<char>> exact;
    std::set<Int> denominators;
};

// Simple quotient within the window. Exact for rank 1; in higher rank the
// singular-vector search is iterated to a fixed point, guarded by the dot
// orbit bound on singular weights: if a singular weight could live deeper
// than K - margin the operation throws UndecidedError instead of guessing
// (callers heading for a J_chi quotient pass margin = p).
LatticeModule simple_quotient_char0(const TruncatedVerma& M, int margin = 1);

// The truncated Verma itself as a lattice (no quotient): M_R(lambda).
LatticeModule lattice_of_verma(const TruncatedVerma& M);

// Reduction mod p of a lattice window. Errors (std::domain_error) naming the
// offending coefficient if p divides any stored denominator.
struct WindowModuleFp {
    std::shared_ptr<const LieAlg> g;
    u64 p = 0;
    WeightFp lambda_tilde;
    int K = 0;
    std::vector<std::vector<std::uint32_t>> rep_monos;
    std::vector<FpMatrix> act;
    std::vector<std::vector<char>> exact;
};
WindowModuleFp base_change_p(const LatticeModule& L, u64 p);

// Quotient of the windowed module by J_chi = <x^p - x^{[p]} - chi(x)^p>.
// Only the negative generators contribute (positive p-th powers already kill
// the window, torals act by F_p scalars); chi must vanish on b. The result is
// validated as a U_chi-module. Throws UndecidedError if the window is too
// shallow to apply every generator exactly.
MatrixModule quotient_by_jchi(const WindowModuleFp& W, const ChiForm& chi);

// Convenience: L_p^chi(lambda) via the full pipeline, with a stability
// re-check at depth K + p (dimensions must agree).
MatrixModule build_L_p_chi(std::shared_ptr<const LieAlg> g, const WeightQ& lambda,
                           const ChiForm& chi, int K, bool stability_check = true);
MatrixModule build_M_p_chi(std::shared_ptr<const LieAlg> g, const WeightQ& lambda,
                           const ChiForm& chi, int K);

int default_window_depth(const LieAlg& g, u64 p);

// Exhibits the surjection M -> M / (maximal submodule) and checks that the
// head is L_chi(lambda_tilde), comparing dimensions against the baby Verma
// quotient. Errors if M = 0.
bool head_surjection_check(const MatrixModule& M, const ChiForm& chi, const WeightFp& lambda_tilde);

std::size_t dim_simple_from_verma(std::shared_ptr<const LieAlg> g, const ChiForm& chi,
                                  const WeightFp& lambda_tilde);

// dim L_p^chi(lambda) over gl_N equals dim L_p^{chi'}(lambda') over sl_N
// (restriction along sl_N < gl_N). Requires p not dividing N and chi(y) = 0
// for y the identity matrix.
bool gl_sl_compare(int N, const WeightQ& lambda, const ChiForm& chi_gl, u64 p, int K);

ChiForm restrict_chi_to_sl(const LieAlg& gl, const LieAlg& sl, const ChiForm& chi);

}  // namespace redenv
