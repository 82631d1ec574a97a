#include "redenv/verma.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace redenv {

std::size_t BabyVerma::index_of(const std::vector<std::uint32_t>& exps) const {
    std::size_t idx = 0;
    for (int r = D() - 1; r >= 0; --r) idx = idx * p() + exps[r];
    return idx;
}

std::vector<std::uint32_t> BabyVerma::exps_of(std::size_t index) const {
    std::vector<std::uint32_t> e(D());
    for (int r = 0; r < D(); ++r) {
        e[r] = std::uint32_t(index % p());
        index /= p();
    }
    return e;
}

long long BabyVerma::ht_of(std::size_t index) const {
    auto e = exps_of(index);
    long long h = 0;
    for (int r = 0; r < D(); ++r) h -= (long long)e[r] * mod.g->rd().height(r);
    return h;
}

WeightFp BabyVerma::weight_of(std::size_t index) const {
    auto e = exps_of(index);
    PrimeField F(p());
    WeightFp w = lambda;
    for (auto& x : w) x %= p();
    for (int r = 0; r < D(); ++r) {
        if (!e[r]) continue;
        auto rv = mod.g->rd().root_vec(r);
        for (int k = 0; k < mod.g->N(); ++k)
            w[k] = F.sub(w[k], F.reduce((long long)e[r] * rv[k]));
    }
    return w;
}

BabyVerma build_baby_verma(std::shared_ptr<const LieAlg> g, const ChiForm& chi,
                           const WeightFp& lambda) {
    if (!chi.vanishes_on_npos(*g))
        throw std::invalid_argument("build_baby_verma: chi must vanish on n+");
    if (!in_lambda_chi(*g, chi, lambda))
        throw std::invalid_argument("build_baby_verma: lambda not in Lambda_chi");
    const u64 p = chi.p;
    const int D = g->D();
    std::size_t dim = 1;
    for (int r = 0; r < D; ++r) dim *= p;

    BabyVerma Z{MatrixModule{g, chi, dim, {}}, lambda};
    FpStraightener st(g, FpCoeffs(p, chi));
    PrimeField F(p);

    // Evaluate a PBW element against z_lambda: positive letters kill z, toral
    // letters act by lambda, the negative part indexes the target monomial.
    auto eval_column = [&](const PBWElem<u64>& el, FpMatrix& A, std::size_t col) {
        for (const auto& [m, c] : el) {
            if (!m.pos_trivial()) continue;
            u64 coeff = c;
            for (int t = 0; t < g->n_torals(); ++t)
                if (m.tor[t]) coeff = F.mul(coeff, F.pow(g->eval_weight_fp(lambda, t, p), m.tor[t]));
            if (!coeff) continue;
            std::size_t row = 0;
            for (int r = D - 1; r >= 0; --r) row = row * p + m.neg[r];
            A.at(row, col) = F.add(A.at(row, col), coeff);
        }
    };

    for (int x = 0; x < g->dim(); ++x) {
        FpMatrix A(p, dim, dim);
        for (std::size_t col = 0; col < dim; ++col) {
            PBWMonomial m = PBWMonomial::unit(*g);
            m.neg = Z.exps_of(col);
            eval_column(st.mul_basis(x, {{m, 1}}), A, col);
        }
        Z.mod.act.push_back(std::move(A));
    }
    return Z;
}

std::vector<Subspace> height_filtration(const BabyVerma& Z) {
    const LieAlg& g = *Z.mod.g;
    const u64 p = Z.p();
    const std::size_t dim = Z.mod.dim;
    long long max_depth = 0;
    for (int r = 0; r < g.D(); ++r) max_depth += (long long)(p - 1) * g.rd().height(r);

    std::vector<long long> depth(dim);
    for (std::size_t i = 0; i < dim; ++i) depth[i] = -Z.ht_of(i);

    // Certify on matrix columns; the levels are coordinate subspaces.
    for (int r = 0; r < g.D(); ++r) {
        const FpMatrix& Fneg = Z.mod.act[g.neg_index(r)];
        const int h = g.rd().height(r);
        for (std::size_t col = 0; col < dim; ++col)
            for (std::size_t row = 0; row < dim; ++row)
                if (Fneg.at(row, col) && depth[row] > depth[col] + h)
                    throw std::logic_error("height_filtration: lowering certificate fails");
    }
    for (int r = 0; r < g.D(); ++r) {
        if (g.rd().height(r) != 1) continue;
        const FpMatrix& E = Z.mod.act[g.pos_index(r)];
        for (std::size_t col = 0; col < dim; ++col)
            for (std::size_t row = 0; row < dim; ++row)
                if (E.at(row, col) && depth[row] > depth[col] - 1)
                    throw std::logic_error("height_filtration: raising certificate fails");
    }

    std::vector<Subspace> chain;
    for (long long m = 0; m <= max_depth; ++m) {
        std::vector<std::vector<u64>> rows;
        for (std::size_t i = 0; i < dim; ++i) {
            if (depth[i] > m) continue;
            std::vector<u64> e(dim, 0);
            e[i] = 1;
            rows.push_back(std::move(e));
        }
        chain.push_back(Subspace::from_vectors(p, dim, rows));
    }
    return chain;
}

std::vector<std::size_t> refined_filtration(const BabyVerma& Z) {
    const LieAlg& g = *Z.mod.g;
    const std::size_t dim = Z.mod.dim;
    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), 0);
    // Height-descending (depth ascending); ties in the exponent-tuple order
    // induced by the root ordering.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        long long da = -Z.ht_of(a), db = -Z.ht_of(b);
        if (da != db) return da < db;
        return Z.exps_of(a) < Z.exps_of(b);
    });

    // Certificate: simple raising actions map each prefix into the previous
    // one (trivial n+ action on successive quotients).
    std::vector<std::size_t> position(dim);
    for (std::size_t k = 0; k < dim; ++k) position[order[k]] = k;
    for (int r = 0; r < g.D(); ++r) {
        if (g.rd().height(r) != 1) continue;
        const FpMatrix& E = Z.mod.act[g.pos_index(r)];
        for (std::size_t col = 0; col < dim; ++col)
            for (std::size_t row = 0; row < dim; ++row)
                if (E.at(row, col) && position[row] >= position[col])
                    throw std::logic_error("refined_filtration: prefix stability fails");
    }
    return order;
}

MatrixModule tensor(const MatrixModule& M, const MatrixModule& N) {
    if (M.p() != N.p() || M.g->kind() != N.g->kind() || M.g->N() != N.g->N() ||
        M.g->rd().order() != N.g->rd().order())
        throw std::invalid_argument("tensor: incompatible modules");
    const u64 p = M.p();
    MatrixModule T{M.g, M.chi.plus(N.chi), M.dim * N.dim, {}};
    for (int x = 0; x < M.g->dim(); ++x) {
        FpMatrix A(p, T.dim, T.dim);
        const FpMatrix &AM = M.act[x], &AN = N.act[x];
        // A = AM ox I + I ox AN on basis (i ox j) -> i * dimN + j.
        for (std::size_t i = 0; i < M.dim; ++i)
            for (std::size_t k = 0; k < M.dim; ++k) {
                u64 c = AM.at(k, i);
                if (!c) continue;
                for (std::size_t j = 0; j < N.dim; ++j)
                    A.at(k * N.dim + j, i * N.dim + j) = c;
            }
        for (std::size_t j = 0; j < N.dim; ++j)
            for (std::size_t k = 0; k < N.dim; ++k) {
                u64 c = AN.at(k, j);
                if (!c) continue;
                for (std::size_t i = 0; i < M.dim; ++i) {
                    u64& slot = A.at(i * N.dim + k, i * N.dim + j);
                    slot = (slot + c) % p;
                }
            }
        T.act.push_back(std::move(A));
    }
    return T;
}

std::vector<u64> tensor_vector(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
    std::vector<u64> v(a.size() * b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) v[i * b.size() + j] = (a[i] * b[j]) % p;
    return v;
}

// Apply the tensor action of basis element x without materializing the big
// matrix: reshape, multiply both sides.
static std::vector<u64> apply_tensor(const MatrixModule& M, const MatrixModule& N, int x,
                                     const std::vector<u64>& v) {
    const u64 p = M.p();
    const std::size_t dm = M.dim, dn = N.dim;
    std::vector<u64> out(dm * dn, 0);
    const FpMatrix &AM = M.act[x], &AN = N.act[x];
    for (std::size_t i = 0; i < dm; ++i)
        for (std::size_t k = 0; k < dm; ++k) {
            u64 c = AM.at(k, i);
            if (!c) continue;
            const u64* src = v.data() + i * dn;
            u64* dst = out.data() + k * dn;
            for (std::size_t j = 0; j < dn; ++j) dst[j] = (dst[j] + c * src[j]) % p;
        }
    for (std::size_t i = 0; i < dm; ++i) {
        const u64* src = v.data() + i * dn;
        u64* dst = out.data() + i * dn;
        for (std::size_t k = 0; k < dn; ++k) {
            u64 acc = 0;
            const u64* row = AN.row(k);
            for (std::size_t j = 0; j < dn; ++j) acc += row[j] * src[j];
            dst[k] = (dst[k] + acc) % p;
        }
    }
    return out;
}

TensorBasisChange tensor_basis_change(const BabyVerma& Zl, const BabyVerma& Zm) {
    if (Zl.p() != Zm.p() || Zl.mod.g->N() != Zm.mod.g->N() ||
        Zl.mod.g->kind() != Zm.mod.g->kind() || Zl.mod.g->rd().order() != Zm.mod.g->rd().order())
        throw std::invalid_argument("tensor_basis_change: incompatible factors");
    const u64 p = Zl.p();
    const int D = Zl.D();
    const std::size_t dm = Zl.mod.dim, dn = Zm.mod.dim, dim = dm * dn;

    std::vector<std::size_t> second = refined_filtration(Zm);

    TensorBasisChange out{FpMatrix(p, dim, dim), FpMatrix(), second};
    // Columns grouped by the second-factor monomial u_j (refined order);
    // within a group, e^{c} (z ox u_j) generated by single lowerings from the
    // monomial with the highest nonzero slot removed.
    std::vector<std::vector<u64>> cols(dm);
    for (std::size_t jj = 0; jj < dn; ++jj) {
        std::size_t j = second[jj];
        // seed: z ox u_j
        std::vector<u64> z(dm, 0);
        z[0] = 1;
        std::vector<u64> uj(dn, 0);
        uj[j] = 1;
        cols[0] = tensor_vector(z, uj, p);
        for (std::size_t ci = 1; ci < dm; ++ci) {
            auto exps = Zl.exps_of(ci);
            int top = D - 1;
            while (exps[top] == 0) --top;
            exps[top] -= 1;
            std::size_t parent = Zl.index_of(exps);
            cols[ci] = apply_tensor(Zl.mod, Zm.mod, Zl.mod.g->neg_index(top), cols[parent]);
        }
        for (std::size_t ci = 0; ci < dm; ++ci)
            for (std::size_t row = 0; row < dim; ++row)
                out.B.at(row, jj * dm + ci) = cols[ci][row];
    }
    auto inv = out.B.inverse();
    if (!inv) throw std::logic_error("tensor_basis_change: basis candidate is singular");
    out.Binv = std::move(*inv);
    return out;
}

FiltrationReport tensor_filtration(const BabyVerma& Zl, const BabyVerma& Zm) {
    FiltrationReport rep;
    const u64 p = Zl.p();
    const int D = Zl.D();
    auto g = Zl.mod.g;
    PrimeField F(p);

    TensorBasisChange tbc = tensor_basis_change(Zl, Zm);
    rep.basis_change_invertible = true;
    const std::size_t dm = Zl.mod.dim, dim = tbc.B.rows();
    const std::size_t nsteps = Zm.mod.dim;
    rep.steps_total = nsteps;


    // A'_x = B^{-1} (A_x B), computed column-wise through the Kronecker
    // structure. Block (s, t) of A'_x must vanish for s > t, and the diagonal
    // blocks must match the reference baby Vermas entry by entry.
    ChiForm chi_sum = Zl.mod.chi.plus(Zm.mod.chi);
    std::vector<WeightFp> step_weight(nsteps);
    std::vector<std::size_t> ref_of_step(nsteps);
    std::vector<BabyVerma> refs;
    std::vector<std::vector<u64>> ref_keys;
    for (std::size_t s = 0; s < nsteps; ++s) {
        std::size_t j = tbc.second_order[s];
        auto b = Zm.exps_of(j);
        WeightFp nu(g->N());
        WeightZ shift(g->N(), 0);
        for (int r = 0; r < D; ++r) {
            auto rv = g->rd().root_vec(r);
            for (int k = 0; k < g->N(); ++k) shift[k] += (long long)b[r] * rv[k];
        }
        for (int k = 0; k < g->N(); ++k)
            nu[k] = F.sub(F.add(Zl.lambda[k] % p, Zm.lambda[k] % p), F.reduce(shift[k]));
        step_weight[s] = nu;
        auto key = g->rd().weight_key_fp(nu, p);
        std::size_t ri = 0;
        while (ri < ref_keys.size() && ref_keys[ri] != key) ++ri;
        if (ri == ref_keys.size()) {
            refs.push_back(build_baby_verma(g, chi_sum, nu));
            ref_keys.push_back(key);
        }
        ref_of_step[s] = ri;
        rep.steps.push_back({Zm.exps_of(j), nu, dm, false});
    }

    rep.flag_stable = true;
    std::vector<char> step_ok(nsteps, 1);
    FpMatrix AxB(p, dim, dim);
    for (int x = 0; x < g->dim(); ++x) {
        for (std::size_t col = 0; col < dim; ++col) {
            std::vector<u64> bcol(dim);
            for (std::size_t r = 0; r < dim; ++r) bcol[r] = tbc.B.at(r, col);
            auto img = apply_tensor(Zl.mod, Zm.mod, x, bcol);
            for (std::size_t r = 0; r < dim; ++r) AxB.at(r, col) = img[r];
        }
        FpMatrix Ax = tbc.Binv.mul(AxB);
        for (std::size_t s = 0; s < nsteps; ++s) {
            const FpMatrix& ref = refs[ref_of_step[s]].mod.act[x];
            for (std::size_t ci = 0; ci < dm; ++ci) {
                std::size_t col = s * dm + ci;
                for (std::size_t row = 0; row < dim; ++row) {
                    u64 v = Ax.at(row, col);
                    if (row >= (s + 1) * dm) {
                        // below the block diagonal: must vanish (flag stability)
                        if (v) {
                            rep.flag_stable = false;
                            step_ok[s] = 0;
                        }
                    } else if (row >= s * dm) {
                        if (v != ref.at(row - s * dm, ci)) step_ok[s] = 0;
                    }
                }
            }
        }
    }

    rep.ok = rep.flag_stable;
    for (std::size_t s = 0; s < nsteps; ++s) {
        rep.steps[s].certified = step_ok[s] != 0;
        rep.ok = rep.ok && step_ok[s];
    }

    // Graded bookkeeping: when both chi's share a standard Levi subset the
    // tensor is X(T)/ZI-graded and each step's block must sit in the coset of
    // its predicted weight. The block generator z ox u_j has integral weight
    // lambda + mu - sum b_r gamma_r by construction, so the check reduces to
    // the grading of the tensor itself being consistent.
    auto Il = Zl.mod.chi.standard_levi(*g);
    auto Im = Zm.mod.chi.standard_levi(*g);
    if (Il && Im && rep.ok) {
        LeviSubset I = *Il;
        for (int i : *Im)
            if (std::find(I.begin(), I.end(), i) == I.end()) I.push_back(i);
        std::sort(I.begin(), I.end());
        try {
            MatrixModule T = tensor(Zl.mod, Zm.mod);
            WeightZ base(g->N());
            for (int k = 0; k < g->N(); ++k)
                base[k] = (long long)(Zl.lambda[k] % p) + (long long)(Zm.lambda[k] % p);
            grade_decompose(T, I, base);
        } catch (const std::exception&) {
            rep.graded_compatible = false;
            rep.ok = false;
        }
    }
    if (!rep.ok && rep.failure.empty()) rep.failure = "certification failed";
    return rep;
}

}  // namespace redenv
