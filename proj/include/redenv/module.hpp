#pragma once

#include <optional>
#include <random>
#include <vector>

#include "redenv/liealg.hpp"
#include "redenv/subspace.hpp"

namespace redenv {

// A finite-dimensional U_chi(g)-module given by explicit action matrices,
// one per Lie algebra basis element. Immutable after construction.
struct MatrixModule {
    std::shared_ptr<const LieAlg> g;
    ChiForm chi;
    std::size_t dim;
    std::vector<FpMatrix> act;

    u64 p() const { return chi.p; }
    const FpMatrix& action(int idx) const { return act[idx]; }
};

// Throws unless the bracket identity and the central relations hold and, for
// chi vanishing on t, the toral actions are simultaneously diagonalizable.
// Quadratic in the basis and cubic in dim; meant for construction-time checks
// on desk-sized modules, not for the big tensor carriers.
void validate_module(const MatrixModule& M);

struct WeightSpace {
    WeightFp weight;  // epsilon-coordinate representative
    Subspace space;
};

// Simultaneous eigenspace decomposition of the toral actions. Errors if the
// torals are not simultaneously diagonalizable over F_p.
std::vector<WeightSpace> weight_spaces(const MatrixModule& M);

const WeightSpace* find_weight_space(const std::vector<WeightSpace>& ws, const MatrixModule& M,
                                     const WeightFp& w);

// Weight of a toral eigenvector (errors if v is not one).
WeightFp weight_of_vector(const MatrixModule& M, const std::vector<u64>& v);

// Smallest action-stable subspace containing the given vectors.
Subspace spin(const MatrixModule& M, const std::vector<std::vector<u64>>& vecs);

// Spin of a single vector keeping, for every basis vector found, the word of
// generators that produced it. raw[i] is the unreduced vector; it equals
// act[gen[i]] applied to raw[parent[i]] (seed: parent = -1).
struct SpinWitness {
    std::vector<std::vector<u64>> raw;
    std::vector<int> parent;
    std::vector<int> gen;
    Subspace span;
};
SpinWitness spin_witness(const MatrixModule& M, const std::vector<u64>& v);

// Per weight, the subspace killed by all simple-root raising actions.
std::vector<WeightSpace> highest_weight_vectors(const MatrixModule& M);

struct SubmoduleView {
    MatrixModule mod;
    FpMatrix basis;  // rows: ambient vectors realizing the submodule basis
};
SubmoduleView submodule_module(const MatrixModule& M, const Subspace& S);

struct QuotientView {
    MatrixModule mod;
    QuotientBasis section;
};
QuotientView quotient_module(const MatrixModule& M, const Subspace& S);

// The unique maximal submodule of a cyclic highest-weight module. Uses the
// detection functional against the generator line when the generator's
// eigenspace in M is one-dimensional; otherwise falls back to a certified
// enumeration of cyclic submodules over the weight spaces. Both paths verify
// their output (action-stable, generator excluded, maximality witnessed).
Subspace max_submodule_of_cyclic_hw(const MatrixModule& M, const std::vector<u64>& gen);

struct CompFactor {
    WeightFp label;  // canonical linkage representative of the highest weight
    std::size_t mult;
    std::size_t dim_simple;
};
using CompFactorList = std::vector<CompFactor>;

// Composition factors by recursive peeling at highest-weight vectors.
// Requires chi(n+) = 0 and chi(t) = 0. Deterministic by default; pass an rng
// to randomize the peeling choices (the result must not change).
CompFactorList composition_factors(const MatrixModule& M, std::mt19937_64* rng = nullptr);

std::size_t total_dim(const CompFactorList& l);
bool same_factors(const RootData& rd, u64 p, const CompFactorList& a, const CompFactorList& b);

// Explicit intertwiner M -> N (columns: images of M's implied basis), or
// nullopt. Both modules must be cyclic highest-weight over the same chi.
std::optional<FpMatrix> find_isomorphism(const MatrixModule& M, const MatrixModule& N);

bool is_equivariant(const MatrixModule& M, const MatrixModule& N, const FpMatrix& psi);

// Conjugation by t = diag(1,-1,1,...): scales the action of e_{ij} by
// (-1)^{i+j} and turns a U_chi-module into a U_{Ad(t)chi}-module; for chi in
// standard Levi form Ad(t)chi = -chi. Errors at p = 2.
MatrixModule twist(const MatrixModule& M);

// X(T)/ZI-grading bookkeeping. Degrees are canonical coset keys: coordinate
// sums over the blocks of {1..N} cut out by I.
struct GradedTag {
    LeviSubset I;
    std::vector<std::vector<long long>> coset;  // per basis vector
};
std::vector<long long> coset_key(int N, const LeviSubset& I, const WeightZ& w);

// Assigns each basis vector its coset, seeding basis vector `gen` with the
// coset of `base`, and verifies the action-shift invariant. Errors if the
// module is not graded over this I with homogeneous basis vectors.
GradedTag grade_decompose(const MatrixModule& M, const LeviSubset& I, const WeightZ& base,
                          std::size_t gen = 0);

}  // namespace redenv
