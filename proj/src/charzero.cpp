#include "redenv/charzero.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace redenv {

namespace {

std::vector<std::vector<std::uint32_t>> window_monomials(int D, int K) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur(D, 0);
    // All tuples with total degree <= K, then sorted by (degree, lex).
    while (true) {
        int total = std::accumulate(cur.begin(), cur.end(), 0);
        if (total <= K) out.push_back(cur);
        int i = 0;
        while (i < D && int(++cur[i]) > K) cur[i++] = 0;
        if (i == D) break;
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int da = std::accumulate(a.begin(), a.end(), 0);
        int db = std::accumulate(b.begin(), b.end(), 0);
        if (da != db) return da < db;
        return a < b;
    });
    return out;
}

}  // namespace

std::size_t TruncatedVerma::index_of(const std::vector<std::uint32_t>& m) const {
    auto it = std::lower_bound(monos.begin(), monos.end(), m, [](const auto& a, const auto& b) {
        int da = std::accumulate(a.begin(), a.end(), 0);
        int db = std::accumulate(b.begin(), b.end(), 0);
        if (da != db) return da < db;
        return a < b;
    });
    if (it == monos.end() || *it != m) throw std::out_of_range("TruncatedVerma: monomial not in window");
    return std::size_t(it - monos.begin());
}

int TruncatedVerma::degree(std::size_t i) const {
    return std::accumulate(monos[i].begin(), monos[i].end(), 0);
}

WeightQ TruncatedVerma::weight_of(std::size_t i) const {
    WeightQ w = lambda;
    for (int r = 0; r < g->D(); ++r) {
        if (!monos[i][r]) continue;
        auto rv = g->rd().root_vec(r);
        for (int k = 0; k < g->N(); ++k) w[k] -= Rat((long long)monos[i][r] * rv[k]);
    }
    return w;
}

TruncatedVerma verma_char0(std::shared_ptr<const LieAlg> g, const WeightQ& lambda, int K) {
    if (K < 1) throw std::invalid_argument("verma_char0: depth must be >= 1");
    TruncatedVerma M;
    M.g = g;
    M.lambda = lambda;
    M.K = K;
    M.monos = window_monomials(g->D(), K);
    if (M.monos.size() > 2000)
        throw std::invalid_argument("verma_char0: window too large for the dense representation");

    QStraightener st(g, QCoeffs{});
    const std::size_t n = M.monos.size();
    M.act.assign(g->dim(), RatMatrix(n, n));
    M.exact.assign(g->dim(), std::vector<char>(n, 1));
    for (int x = 0; x < g->dim(); ++x) {
        for (std::size_t col = 0; col < n; ++col) {
            PBWMonomial m = PBWMonomial::unit(*g);
            m.neg = M.monos[col];
            PBWElem<Rat> el = st.mul_basis(x, {{m, Rat(1)}});
            for (const auto& [mm, c] : el) {
                if (!mm.pos_trivial()) continue;
                Rat coeff = c;
                for (int t = 0; t < g->n_torals(); ++t)
                    for (std::uint32_t e = 0; e < mm.tor[t]; ++e)
                        coeff *= g->eval_weight_q(lambda, t);
                if (coeff == 0) continue;
                int deg = 0;
                for (auto e : mm.neg) deg += int(e);
                if (deg > K) {
                    M.exact[x][col] = 0;
                    continue;
                }
                std::vector<std::uint32_t> key(mm.neg.begin(), mm.neg.end());
                M.act[x].at(M.index_of(key), col) += coeff;
            }
        }
    }
    return M;
}

namespace {

// Column order with the deepest monomials first, so rref pivots eat the deep
// end of the window and quotient representatives stay shallow.
std::vector<std::size_t> desc_order(const TruncatedVerma& M) {
    std::vector<std::size_t> ord(M.size());
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
        int da = M.degree(a), db = M.degree(b);
        if (da != db) return da > db;
        return M.monos[a] > M.monos[b];
    });
    return ord;
}

// Possible depths of singular weights: mu = w . lambda with lambda - mu a
// nonnegative integral combination of simple roots. Returns the max total
// coefficient, or -1 when no singular weight exists.
int max_singular_depth(const LieAlg& g, const WeightQ& lambda) {
    const int N = g.N();
    std::vector<int> perm(N);
    std::iota(perm.begin(), perm.end(), 0);
    int worst = -1;
    do {
        WeylElement w{perm};
        WeightQ mu = dot_action(w, lambda);
        bool integral = true, positive = true;
        long long depth = 0, acc = 0;
        for (int i = 0; i < N && integral; ++i) {
            Rat d = lambda[i] - mu[i];
            if (rat_den(d) != 1) { integral = false; break; }
            acc += (long long)rat_num(d);
            if (i + 1 < N) {
                if (acc < 0) positive = false;
                depth += acc;
            } else if (acc != 0) {
                positive = false;  // not in the root lattice
            }
        }
        if (integral && positive && depth > 0) worst = std::max(worst, int(depth));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return worst;
}

std::vector<Rat> to_desc(const std::vector<Rat>& v, const std::vector<std::size_t>& ord) {
    std::vector<Rat> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[ord[k]];
    return out;
}

}  // namespace

LatticeModule lattice_of_verma(const TruncatedVerma& M) {
    LatticeModule L{M, {}, {}, {}, {}};
    L.reps.resize(M.size());
    std::iota(L.reps.begin(), L.reps.end(), 0);
    L.act = M.act;
    L.exact = M.exact;
    for (const auto& A : L.act)
        for (const auto& d : A.denominators()) L.denominators.insert(d);
    return L;
}

LatticeModule simple_quotient_char0(const TruncatedVerma& M, int margin) {
    const LieAlg& g = *M.g;
    const int K = M.K;

    int depth_bound = max_singular_depth(g, M.lambda);
    if (depth_bound < 0) return lattice_of_verma(M);  // Verma already simple in the window
    // All singular weights (also of iterated subquotients) lie in the dot
    // orbit, so one bound guards the whole computation.
    if (depth_bound > K - margin)
        throw UndecidedError("simple_quotient_char0: singular weight depth " +
                             std::to_string(depth_bound) + " too close to window depth " +
                             std::to_string(K));

    auto ord = desc_order(M);
    const std::size_t n = M.size();

    // Group monomials by exact Q-weight.
    std::map<WeightQ, std::vector<std::size_t>> spaces;
    for (std::size_t i = 0; i < n; ++i) spaces[M.weight_of(i)].push_back(i);

    std::vector<int> raising;
    for (int r = 0; r < g.D(); ++r)
        if (g.rd().height(r) == 1) raising.push_back(g.pos_index(r));

    std::vector<std::vector<Rat>> nrows;  // rows in desc coordinates

    auto insert_row = [&](std::vector<Rat> v) -> bool {
        // forward-reduce against nrows, normalize, store
        for (const auto& row : nrows) {
            std::size_t piv = 0;
            while (piv < n && row[piv] == 0) ++piv;
            Rat f = v[piv];
            if (f == 0) continue;
            for (std::size_t j = piv; j < n; ++j)
                if (row[j] != 0) v[j] -= f * row[j];
        }
        std::size_t piv = 0;
        while (piv < n && v[piv] == 0) ++piv;
        if (piv == n) return false;
        Rat inv = Rat(1) / v[piv];
        for (std::size_t j = piv; j < n; ++j)
            if (v[j] != 0) v[j] *= inv;
        // back-substitute to keep rows reduced
        for (auto& row : nrows)
            if (row[piv] != 0) {
                Rat f = row[piv];
                for (std::size_t j = piv; j < n; ++j)
                    if (v[j] != 0) row[j] -= f * v[j];
            }
        nrows.push_back(std::move(v));
        return true;
    };

    auto in_span = [&](const std::vector<Rat>& v_desc) {
        std::vector<Rat> w = v_desc;
        for (const auto& row : nrows) {
            std::size_t piv = 0;
            while (piv < n && row[piv] == 0) ++piv;
            Rat f = w[piv];
            if (f == 0) continue;
            for (std::size_t j = piv; j < n; ++j)
                if (row[j] != 0) w[j] -= f * row[j];
        }
        for (const auto& x : w)
            if (x != 0) return false;
        return true;
    };

    // Iterate: find weight vectors (not the generator line) killed by all
    // simple raisings modulo the current span; spin them down; repeat.
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [w, idxs] : spaces) {
            if (w == M.lambda) continue;
            const std::size_t d = idxs.size();
            // Solve for coefficient vectors c with e_s (sum c_i m_i) in span.
            // Build the residual matrix of raising images.
            std::vector<std::vector<Rat>> cols;
            for (std::size_t i = 0; i < d; ++i) {
                std::vector<Rat> v(n, Rat(0));
                v[idxs[i]] = 1;
                std::vector<Rat> big;
                for (int s : raising) {
                    auto img = M.act[s].apply(v);
                    auto dimg = to_desc(img, ord);
                    for (const auto& row : nrows) {
                        std::size_t piv = 0;
                        while (piv < n && row[piv] == 0) ++piv;
                        Rat f = dimg[piv];
                        if (f == 0) continue;
                        for (std::size_t j = piv; j < n; ++j)
                            if (row[j] != 0) dimg[j] -= f * row[j];
                    }
                    big.insert(big.end(), dimg.begin(), dimg.end());
                }
                cols.push_back(std::move(big));
            }
            RatMatrix sys(cols[0].size(), d);
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t i = 0; i < cols[j].size(); ++i) sys.at(i, j) = cols[j][i];
            sys.rref_in_place();
            auto piv = sys.pivot_columns();
            std::vector<char> is_piv(d, 0);
            for (auto pc : piv) is_piv[pc] = 1;
            for (std::size_t free = 0; free < d; ++free) {
                if (is_piv[free]) continue;
                std::vector<Rat> c(d, Rat(0));
                c[free] = 1;
                for (std::size_t i = 0; i < piv.size(); ++i) c[piv[i]] = -sys.at(i, free);
                std::vector<Rat> v(n, Rat(0));
                for (std::size_t i = 0; i < d; ++i) v[idxs[i]] = c[i];
                auto vd = to_desc(v, ord);
                if (in_span(vd)) continue;
                // Spin downward within the window (raisings/torals keep the
                // span by construction of singular vectors modulo it).
                std::vector<std::vector<Rat>> queue{v};
                insert_row(vd);
                changed = true;
                while (!queue.empty()) {
                    auto cur = queue.back();
                    queue.pop_back();
                    for (int x = 0; x < g.dim(); ++x) {
                        auto img = M.act[x].apply(cur);
                        bool nonzero = false;
                        for (const auto& r : img) nonzero |= r != 0;
                        if (!nonzero) continue;
                        auto di = to_desc(img, ord);
                        if (insert_row(di)) queue.push_back(img);
                    }
                }
            }
        }
    }

    LatticeModule L{M, {}, {}, {}, {}};
    // Representatives: non-pivot desc-coordinates, mapped back to monomials.
    std::vector<char> pivot_coord(n, 0);
    for (const auto& row : nrows) {
        std::size_t piv = 0;
        while (piv < n && row[piv] == 0) ++piv;
        pivot_coord[piv] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        if (!pivot_coord[k]) L.reps.push_back(ord[k]);
    std::sort(L.reps.begin(), L.reps.end());

    const std::size_t q = L.reps.size();
    std::map<std::size_t, std::size_t> rep_pos;
    for (std::size_t i = 0; i < q; ++i) rep_pos[L.reps[i]] = i;
    std::map<std::size_t, std::size_t> desc_pos;
    for (std::size_t k = 0; k < n; ++k) desc_pos[ord[k]] = k;

    L.act.assign(g.dim(), RatMatrix(q, q));
    L.exact.assign(g.dim(), std::vector<char>(q, 1));
    for (int x = 0; x < g.dim(); ++x) {
        for (std::size_t i = 0; i < q; ++i) {
            std::vector<Rat> v(n, Rat(0));
            v[L.reps[i]] = 1;
            auto img = M.act[x].apply(v);
            L.exact[x][i] = M.exact[x][L.reps[i]];
            auto di = to_desc(img, ord);
            for (const auto& row : nrows) {
                std::size_t piv = 0;
                while (piv < n && row[piv] == 0) ++piv;
                Rat f = di[piv];
                if (f == 0) continue;
                for (std::size_t j = piv; j < n; ++j)
                    if (row[j] != 0) di[j] -= f * row[j];
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (di[k] == 0) continue;
                auto it = rep_pos.find(ord[k]);
                if (it == rep_pos.end())
                    throw std::logic_error("simple_quotient_char0: reduction left a pivot residue");
                L.act[x].at(it->second, i) = di[k];
            }
        }
    }
    for (const auto& A : L.act)
        for (const auto& d : A.denominators()) L.denominators.insert(d);
    return L;
}

WindowModuleFp base_change_p(const LatticeModule& L, u64 p) {
    PrimeField F(p);  // validates p odd prime
    for (const auto& den : L.denominators)
        if (den % p == 0) {
            std::ostringstream os;
            os << "base_change_p: p = " << p << " divides structure-constant denominator " << den;
            throw std::domain_error(os.str());
        }
    WindowModuleFp W;
    W.g = L.base.g;
    W.p = p;
    W.K = L.base.K;
    auto lt = weight_mod_p(L.base.lambda, p);
    if (!lt) throw std::domain_error("base_change_p: p divides a denominator of lambda");
    W.lambda_tilde = *lt;
    for (std::size_t i : L.reps) W.rep_monos.push_back(L.base.monos[i]);
    const std::size_t q = L.reps.size();
    W.act.assign(L.base.g->dim(), FpMatrix(p, q, q));
    W.exact = L.exact;
    for (int x = 0; x < L.base.g->dim(); ++x)
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < q; ++j) {
                const Rat& v = L.act[x].at(i, j);
                if (v == 0) continue;
                auto r = rat_mod_p(v, p);
                if (!r) throw std::domain_error("base_change_p: p divides a denominator");
                W.act[x].at(i, j) = *r;
            }
    return W;
}

MatrixModule quotient_by_jchi(const WindowModuleFp& W, const ChiForm& chi) {
    const LieAlg& g = *W.g;
    const u64 p = W.p;
    if (chi.p != p) throw std::invalid_argument("quotient_by_jchi: field mismatch");
    if (!chi.vanishes_on_b(g))
        throw std::invalid_argument("quotient_by_jchi: chi must vanish on b");
    PrimeField F(p);
    const std::size_t q = W.rep_monos.size();

    auto deg_of = [&](std::size_t i) {
        return std::accumulate(W.rep_monos[i].begin(), W.rep_monos[i].end(), 0);
    };

    // Spanning vectors of J_chi . window: (e_{-gamma}^p - chi^p) m for every
    // rep monomial m deep enough that the p applications stay exact.
    std::vector<std::vector<u64>> jrows;
    for (int r = 0; r < g.D(); ++r) {
        const FpMatrix& Fr = W.act[g.neg_index(r)];
        const auto& ex = W.exact[g.neg_index(r)];
        u64 scalar = central_scalar(g, chi, g.neg_index(r));
        for (std::size_t i = 0; i < q; ++i) {
            if (deg_of(i) + int(p) > W.K) continue;
            std::vector<u64> v(q, 0);
            v[i] = 1;
            bool ok = true;
            for (u64 k = 0; k < p && ok; ++k) {
                for (std::size_t j = 0; j < q; ++j)
                    if (v[j] && !ex[j]) ok = false;
                if (ok) v = Fr.apply(v);
            }
            if (!ok)
                throw UndecidedError("quotient_by_jchi: window too shallow for an exact generator");
            if (scalar) v[i] = F.sub(v[i], scalar);
            jrows.push_back(std::move(v));
        }
    }

    // Quotient in depth-descending coordinates so representatives stay
    // shallow.
    std::vector<std::size_t> ord(q);
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
        if (deg_of(a) != deg_of(b)) return deg_of(a) > deg_of(b);
        return W.rep_monos[a] > W.rep_monos[b];
    });
    std::vector<std::size_t> pos(q);
    for (std::size_t k = 0; k < q; ++k) pos[ord[k]] = k;

    auto permute = [&](const std::vector<u64>& v) {
        std::vector<u64> o(q);
        for (std::size_t k = 0; k < q; ++k) o[k] = v[ord[k]];
        return o;
    };
    auto unpermute = [&](const std::vector<u64>& v) {
        std::vector<u64> o(q);
        for (std::size_t k = 0; k < q; ++k) o[ord[k]] = v[k];
        return o;
    };

    std::vector<std::vector<u64>> jd;
    for (auto& r : jrows) jd.push_back(permute(r));
    Subspace S = Subspace::from_vectors(p, q, jd);
    QuotientBasis qb(S, Subspace::full(p, q));
    const std::size_t dim = qb.dim();

    MatrixModule Q{W.g, chi, dim, {}};
    for (int x = 0; x < g.dim(); ++x) {
        FpMatrix A(p, dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            std::vector<u64> c(dim, 0);
            c[i] = 1;
            auto lift = unpermute(qb.lift(c));
            for (std::size_t j = 0; j < q; ++j)
                if (lift[j] && !W.exact[x][j])
                    throw UndecidedError("quotient_by_jchi: inexact column touched");
            auto img = W.act[x].apply(lift);
            auto cc = qb.coords(permute(img));
            for (std::size_t j = 0; j < dim; ++j) A.at(j, i) = cc[j];
        }
        Q.act.push_back(std::move(A));
    }
    if (dim) validate_module(Q);
    return Q;
}

int default_window_depth(const LieAlg& g, u64 p) {
    int K = int(3 * p);
    K = std::max(K, int(p) * g.D());
    K = std::max(K, g.D() * int(p - 1) + int(p));
    return K;
}

static MatrixModule pipeline(std::shared_ptr<const LieAlg> g, const WeightQ& lambda,
                             const ChiForm& chi, int K, bool simple) {
    TruncatedVerma M = verma_char0(g, lambda, K);
    LatticeModule L = simple ? simple_quotient_char0(M, int(chi.p)) : lattice_of_verma(M);
    WindowModuleFp W = base_change_p(L, chi.p);
    return quotient_by_jchi(W, chi);
}

MatrixModule build_L_p_chi(std::shared_ptr<const LieAlg> g, const WeightQ& lambda,
                           const ChiForm& chi, int K, bool stability_check) {
    MatrixModule Q = pipeline(g, lambda, chi, K, true);
    if (stability_check) {
        MatrixModule Q2 = pipeline(g, lambda, chi, K + int(chi.p), true);
        if (Q2.dim != Q.dim)
            throw UndecidedError("build_L_p_chi: dimension not stable under window growth");
    }
    return Q;
}

MatrixModule build_M_p_chi(std::shared_ptr<const LieAlg> g, const WeightQ& lambda,
                           const ChiForm& chi, int K) {
    return pipeline(g, lambda, chi, K, false);
}

std::size_t dim_simple_from_verma(std::shared_ptr<const LieAlg> g, const ChiForm& chi,
                                  const WeightFp& lambda_tilde) {
    BabyVerma Z = build_baby_verma(g, chi, lambda_tilde);
    std::vector<u64> gen(Z.mod.dim, 0);
    gen[0] = 1;
    Subspace N = max_submodule_of_cyclic_hw(Z.mod, gen);
    return Z.mod.dim - N.dim();
}

bool head_surjection_check(const MatrixModule& M, const ChiForm& chi,
                           const WeightFp& lambda_tilde) {
    if (M.dim == 0) throw std::invalid_argument("head_surjection_check: module is zero");
    if (!chi.standard_levi(*M.g))
        throw std::invalid_argument("head_surjection_check: chi not in standard Levi form");
    // The generator: a highest-weight vector of weight lambda_tilde spanning
    // the module.
    auto hw = highest_weight_vectors(M);
    const WeightSpace* top = find_weight_space(hw, M, lambda_tilde);
    if (!top) return false;
    std::vector<u64> gen;
    for (const auto& cand : projective_vectors(top->space)) {
        if (spin(M, {cand}).dim() == M.dim) {
            gen = cand;
            break;
        }
    }
    if (gen.empty()) return false;
    Subspace N = max_submodule_of_cyclic_hw(M, gen);
    std::size_t head_dim = M.dim - N.dim();
    // The head is the simple quotient of Z_chi(lambda_tilde); compare.
    return head_dim == dim_simple_from_verma(M.g, chi, lambda_tilde);
}

ChiForm restrict_chi_to_sl(const LieAlg& gl, const LieAlg& sl, const ChiForm& chi) {
    ChiForm out(chi.p, sl.dim());
    for (int r = 0; r < sl.D(); ++r) {
        auto [i, j] = sl.rd().pos_root(r);
        out.values[sl.neg_index(r)] = chi(gl.matrix_unit_index(j, i));
        out.values[sl.pos_index(r)] = chi(gl.matrix_unit_index(i, j));
    }
    // Torals h_i = e_ii - e_{i+1,i+1}.
    for (int t = 0; t < sl.n_torals(); ++t) {
        PrimeField F(chi.p);
        out.values[sl.toral_index(t)] =
            F.sub(chi(gl.toral_index(t)), chi(gl.toral_index(t + 1)));
    }
    return out;
}

bool gl_sl_compare(int N, const WeightQ& lambda, const ChiForm& chi_gl, u64 p, int K) {
    if (N % int(p) == 0) throw std::invalid_argument("gl_sl_compare: requires p not dividing N");
    auto gl = make_alg(AlgKind::gl, N);
    auto sl = make_alg(AlgKind::sl, N);
    // chi(y) = 0 for y the identity matrix.
    PrimeField F(p);
    u64 trace = 0;
    for (int t = 0; t < N; ++t) trace = F.add(trace, chi_gl(gl->toral_index(t)));
    if (trace) throw std::invalid_argument("gl_sl_compare: chi(identity) must vanish");

    MatrixModule Lgl = build_L_p_chi(gl, lambda, chi_gl, K);
    ChiForm chi_sl = restrict_chi_to_sl(*gl, *sl, chi_gl);
    MatrixModule Lsl = build_L_p_chi(sl, lambda, chi_sl, K);
    return Lgl.dim == Lsl.dim;
}

}  // namespace redenv
