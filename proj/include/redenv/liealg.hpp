#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "redenv/rootdata.hpp"

namespace redenv {

// Chevalley-type basis of gl_N or sl_N in the matrix realization, indexed as
//   [0, D)          negative root vectors  e_{-gamma_r} = e_{j,i}
//   [D, D+T)        torals                 gl: e_{ii}; sl: h_i = e_{ii} - e_{i+1,i+1}
//   [D+T, D+T+D)    positive root vectors  e_{gamma_r} = e_{i,j}
// Brackets are literal matrix commutators, so there is no sign convention to
// get wrong; x^{[p]} is the p-th matrix power.
class LieAlg {
  public:
    struct Term {
        int idx;
        long long c;
    };

    LieAlg(AlgKind kind, int N, RootOrder order = RootOrder::HeightLex);

    const RootData& rd() const { return rd_; }
    AlgKind kind() const { return rd_.kind(); }
    int N() const { return rd_.N(); }
    int D() const { return rd_.D(); }
    int n_torals() const { return rd_.n_torals(); }
    int dim() const { return 2 * D() + n_torals(); }

    int neg_index(int r) const { return r; }
    int toral_index(int t) const { return D() + t; }
    int pos_index(int r) const { return D() + n_torals() + r; }
    bool is_neg(int idx) const { return idx < D(); }
    bool is_toral(int idx) const { return idx >= D() && idx < D() + n_torals(); }
    bool is_pos(int idx) const { return idx >= D() + n_torals(); }
    int root_of(int idx) const;  // r for root vectors; -1 for torals

    // Basis element by matrix position: e_{ij} for i != j; for sl, diagonal
    // positions are not basis elements (expand instead).
    int matrix_unit_index(int i, int j) const;

    std::string basis_name(int idx) const;

    // The realizing N x N integer matrix (entries in {-1,0,1}).
    std::vector<long long> matrix_of(int idx) const;

    const std::vector<Term>& bracket(int x, int y) const { return brackets_[x * dim() + y]; }
    std::vector<Term> p_power(int x, u64 p) const;

    // epsilon-weight of ad(t) on the basis element: roots get their root,
    // torals get zero.
    WeightZ ad_weight(int idx) const;

    // gamma(h) for the toral basis element h = torals_[t] and root gamma given
    // by its epsilon-coordinates.
    long long eval_on_toral(const WeightZ& eps_coords, int t) const;
    // lambda(h) for a weight in epsilon coordinates.
    u64 eval_weight_fp(const WeightFp& lambda, int t, u64 p) const;
    Rat eval_weight_q(const WeightQ& lambda, int t) const;

  private:
    RootData rd_;
    std::vector<std::vector<Term>> brackets_;
    std::vector<Term> expand(const std::vector<long long>& mat) const;
};

std::shared_ptr<const LieAlg> make_alg(AlgKind kind, int N, RootOrder order = RootOrder::HeightLex);

// A p-linear functional chi on the basis, with values in F_p.
struct ChiForm {
    u64 p;
    std::vector<u64> values;  // per basis index

    ChiForm(u64 p_, std::size_t dim) : p(p_), values(dim, 0) {}

    u64 operator()(int idx) const { return values[idx]; }
    ChiForm negated() const;
    ChiForm plus(const ChiForm& o) const;

    bool vanishes_on_npos(const LieAlg& g) const;
    bool vanishes_on_b(const LieAlg& g) const;
    // I such that chi vanishes on b and is supported on negative simple root
    // vectors indexed by I ((weak) standard Levi form); nullopt otherwise.
    std::optional<LeviSubset> standard_levi(const LieAlg& g) const;
};

ChiForm chi_zero(const LieAlg& g, u64 p);
// chi(f_alpha) = 1 for every negative simple root vector.
ChiForm chi_regular_nilpotent(const LieAlg& g, u64 p);

// The scalar chi(x)^p by which x^p - x^{[p]} acts on any U_chi-module.
u64 central_scalar(const LieAlg& g, const ChiForm& chi, int idx);

// Membership in Lambda_chi: lambda(h)^p - lambda(h^{[p]}) = chi(h)^p on every
// toral basis element (the defining equation is additive and p-semilinear in
// h, so the basis check suffices).
bool in_lambda_chi(const LieAlg& g, const ChiForm& chi, const WeightFp& lambda);

}  // namespace redenv
