#pragma once

#include <cstdint>
#include <string>

#include "redenv/module.hpp"
#include "redenv/pbw.hpp"

namespace redenv {

// The baby Verma module Z_chi(lambda) on its monomial basis: index
// a = (a_1..a_D) in [0,p)^D encodes e_{-gamma_D}^{a_D} ... e_{-gamma_1}^{a_1} z,
// linearized mixed-radix with a_1 fastest.
struct BabyVerma {
    MatrixModule mod;
    WeightFp lambda;

    u64 p() const { return mod.p(); }
    int D() const { return mod.g->D(); }
    std::size_t index_of(const std::vector<std::uint32_t>& exps) const;
    std::vector<std::uint32_t> exps_of(std::size_t index) const;
    long long ht_of(std::size_t index) const;  // -sum a_r ht(gamma_r)
    WeightFp weight_of(std::size_t index) const;
};

// Requires chi(n+) = 0 and lambda in Lambda_chi; actions are computed by
// straightening left multiplication against the monomial basis.
BabyVerma build_baby_verma(std::shared_ptr<const LieAlg> g, const ChiForm& chi,
                           const WeightFp& lambda);

// The chain V_{>=0} <= V_{>=-1} <= ... by monomial height, certified:
//   e_{-gamma_r} V_{>=-m} <= V_{>=-m-ht(gamma_r)}   and
//   I+ V_{>=-m} <= V_{>=-m+1}.
// Throws if either containment fails. Returned as index sets per level.
std::vector<Subspace> height_filtration(const BabyVerma& Z);

// Total order on the monomial basis refining the height order such that each
// prefix span is U_0(n+)-stable with trivial n+ action on successive
// quotients (certified). Tie-break within a height class follows the root
// order of the underlying algebra.
std::vector<std::size_t> refined_filtration(const BabyVerma& Z);

// Tensor product along the coproduct: x(m ox n) = xm ox n + m ox xn.
// The result is a U_{chi+chi'}-module.
MatrixModule tensor(const MatrixModule& M, const MatrixModule& N);

std::vector<u64> tensor_vector(const std::vector<u64>& a, const std::vector<u64>& b, u64 p);

// The change of basis from the product basis to the vectors
// e^c (z ox e^d u); certified invertible (errors otherwise). Column
// (j * p^D + i) holds e^{c(i)} (z ox u_j) where u_j runs over the second
// factor's monomials in refined_filtration order and c(i) in monomial order.
struct TensorBasisChange {
    FpMatrix B;
    FpMatrix Binv;  // certification of invertibility
    std::vector<std::size_t> second_order;  // refined order of the second factor
};
TensorBasisChange tensor_basis_change(const BabyVerma& Zl, const BabyVerma& Zm);

struct FiltrationStep {
    std::vector<std::uint32_t> b;  // exponent tuple of the second-factor monomial
    WeightFp weight;               // lambda + mu - sum b_r gamma_r
    std::size_t quotient_dim;
    bool certified;
};

struct FiltrationReport {
    bool ok = false;
    std::size_t steps_total = 0;
    bool basis_change_invertible = false;
    bool flag_stable = false;       // all partial spans action-stable
    bool graded_compatible = true;  // coset bookkeeping consistent (when applicable)
    std::vector<FiltrationStep> steps;
    std::string failure;
};

// Certifies the baby Verma filtration of Z_chi(lambda) ox Z_{chi'}(mu):
// in the mixed basis the actions must be block-triangular for the flag
// W_1 <= W_2 <= ..., and each diagonal block must equal the action of
// Z_{chi+chi'}(lambda + mu - sum b_r gamma_r) on the nose (the basis match
// z ox u |-> z_nu is the intertwiner, verified entrywise).
FiltrationReport tensor_filtration(const BabyVerma& Zl, const BabyVerma& Zm);

}  // namespace redenv
