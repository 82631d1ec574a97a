#include "redenv/module.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace redenv {

void validate_module(const MatrixModule& M) {
    const LieAlg& g = *M.g;
    const u64 p = M.p();
    PrimeField F(p);
    const FpMatrix id = FpMatrix::identity(p, M.dim);
    for (int x = 0; x < g.dim(); ++x) {
        for (int y = 0; y < g.dim(); ++y) {
            FpMatrix lhs = M.act[x].mul(M.act[y]).sub(M.act[y].mul(M.act[x]));
            FpMatrix rhs(p, M.dim, M.dim);
            for (const auto& t : g.bracket(x, y)) rhs = rhs.add(M.act[t.idx].scale(F.reduce(t.c)));
            if (!(lhs == rhs)) throw std::logic_error("validate_module: bracket identity fails");
        }
        FpMatrix xp = M.act[x].pow(p);
        for (const auto& t : g.p_power(x, p)) xp = xp.sub(M.act[t.idx].scale(F.reduce(t.c)));
        if (!(xp == id.scale(central_scalar(g, M.chi, x))))
            throw std::logic_error("validate_module: central relation fails for " + g.basis_name(x));
    }
    if (M.chi.vanishes_on_b(g)) {
        std::size_t total = 0;
        for (const auto& ws : weight_spaces(M)) total += ws.space.dim();
        if (total != M.dim) throw std::logic_error("validate_module: weight spaces do not fill module");
    }
}

static bool all_torals_diagonal(const MatrixModule& M) {
    for (int t = 0; t < M.g->n_torals(); ++t) {
        const FpMatrix& A = M.act[M.g->toral_index(t)];
        for (std::size_t i = 0; i < A.rows(); ++i)
            for (std::size_t j = 0; j < A.cols(); ++j)
                if (i != j && A.at(i, j)) return false;
    }
    return true;
}

// Reconstruct an epsilon-coordinate representative from the toral eigenvalue
// tuple. For gl the eigenvalues are the coordinates; for sl they are the
// consecutive differences, so we anchor the last coordinate at 0.
static WeightFp weight_from_eigs(const LieAlg& g, const std::vector<u64>& eig, u64 p) {
    const int N = g.N();
    WeightFp w(N, 0);
    if (g.kind() == AlgKind::gl) {
        for (int i = 0; i < N; ++i) w[i] = eig[i] % p;
    } else {
        for (int i = N - 2; i >= 0; --i) w[i] = (w[i + 1] + eig[i]) % p;
    }
    return w;
}

std::vector<WeightSpace> weight_spaces(const MatrixModule& M) {
    const LieAlg& g = *M.g;
    const u64 p = M.p();
    const int T = g.n_torals();
    std::vector<std::pair<std::vector<u64>, Subspace>> blocks;

    if (all_torals_diagonal(M)) {
        std::map<std::vector<u64>, std::vector<std::vector<u64>>> buckets;
        for (std::size_t i = 0; i < M.dim; ++i) {
            std::vector<u64> eig(T);
            for (int t = 0; t < T; ++t) eig[t] = M.act[g.toral_index(t)].at(i, i);
            std::vector<u64> e(M.dim, 0);
            e[i] = 1;
            buckets[eig].push_back(std::move(e));
        }
        for (auto& [eig, vecs] : buckets)
            blocks.push_back({eig, Subspace::from_vectors(p, M.dim, vecs)});
    } else {
        // Iterative eigenspace splitting, one toral at a time.
        blocks.push_back({{}, Subspace::full(p, M.dim)});
        for (int t = 0; t < T; ++t) {
            const FpMatrix& A = M.act[g.toral_index(t)];
            std::vector<std::pair<std::vector<u64>, Subspace>> next;
            for (auto& [eig, B] : blocks) {
                std::size_t covered = 0;
                // Restriction of A to B in B-coordinates.
                const std::size_t d = B.dim();
                FpMatrix R(p, d, d);
                for (std::size_t i = 0; i < d; ++i) {
                    auto img = A.apply(B.basis().row_vec(i));
                    auto c = B.coords(img);
                    for (std::size_t j = 0; j < d; ++j) R.at(j, i) = c[j];
                }
                for (u64 c = 0; c < p; ++c) {
                    FpMatrix S = R.sub(FpMatrix::identity(p, d).scale(c));
                    FpMatrix K = S.kernel();
                    if (K.rows() == 0) continue;
                    std::vector<std::vector<u64>> lifted;
                    for (std::size_t i = 0; i < K.rows(); ++i) {
                        std::vector<u64> v(M.dim, 0);
                        for (std::size_t j = 0; j < d; ++j) {
                            u64 cj = K.at(i, j);
                            if (!cj) continue;
                            const u64* row = B.basis().row(j);
                            for (std::size_t k = 0; k < M.dim; ++k) v[k] = (v[k] + cj * row[k]) % p;
                        }
                        lifted.push_back(std::move(v));
                    }
                    auto eig2 = eig;
                    eig2.push_back(c);
                    covered += lifted.size();
                    next.push_back({eig2, Subspace::from_vectors(p, M.dim, lifted)});
                }
                if (covered != d)
                    throw std::logic_error("weight_spaces: toral action not diagonalizable");
            }
            blocks = std::move(next);
        }
    }
    std::vector<WeightSpace> out;
    for (auto& [eig, B] : blocks) out.push_back({weight_from_eigs(g, eig, p), B});
    std::sort(out.begin(), out.end(), [&](const WeightSpace& a, const WeightSpace& b) {
        return M.g->rd().weight_key_fp(a.weight, p) < M.g->rd().weight_key_fp(b.weight, p);
    });
    return out;
}

static std::vector<u64> combine(const Subspace& space, const std::vector<u64>& coeffs) {
    const u64 p = space.p();
    std::vector<u64> v(space.ambient(), 0);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (!coeffs[j]) continue;
        const u64* row = space.basis().row(j);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = (v[k] + coeffs[j] * row[k]) % p;
    }
    return v;
}

const WeightSpace* find_weight_space(const std::vector<WeightSpace>& ws, const MatrixModule& M,
                                     const WeightFp& w) {
    auto key = M.g->rd().weight_key_fp(w, M.p());
    for (const auto& s : ws)
        if (M.g->rd().weight_key_fp(s.weight, M.p()) == key) return &s;
    return nullptr;
}

WeightFp weight_of_vector(const MatrixModule& M, const std::vector<u64>& v) {
    const LieAlg& g = *M.g;
    const u64 p = M.p();
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] % p == 0) ++lead;
    if (lead == v.size()) throw std::invalid_argument("weight_of_vector: zero vector");
    PrimeField F(p);
    std::vector<u64> eig(g.n_torals());
    for (int t = 0; t < g.n_torals(); ++t) {
        auto img = M.act[g.toral_index(t)].apply(v);
        u64 c = F.mul(img[lead], F.inv(v[lead] % p));
        for (std::size_t i = 0; i < v.size(); ++i)
            if (img[i] != F.mul(c, v[i] % p))
                throw std::invalid_argument("weight_of_vector: not a toral eigenvector");
        eig[t] = c;
    }
    return weight_from_eigs(g, eig, p);
}

// Incremental elimination basis: rows kept forward-reduced with unit pivots.
namespace {
class Eliminator {
  public:
    Eliminator(u64 p, std::size_t n) : p_(p), n_(n) {}

    // Reduces v against the current rows; if a nonzero remainder survives it
    // is normalized, stored, and its pivot registered. Returns the stored row
    // index or -1.
    int insert(std::vector<u64> v) {
        reduce(v);
        std::size_t piv = 0;
        while (piv < n_ && !v[piv]) ++piv;
        if (piv == n_) return -1;
        PrimeField F(p_);
        u64 inv = F.inv(v[piv]);
        for (auto& x : v) x = (x * inv) % p_;
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        return int(rows_.size()) - 1;
    }

    void reduce(std::vector<u64>& v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            u64 f = v[pivots_[i]] % p_;
            if (!f) continue;
            u64 fn = p_ - f;
            const auto& r = rows_[i];
            for (std::size_t j = pivots_[i]; j < n_; ++j) v[j] = (v[j] + fn * r[j]) % p_;
        }
    }

    std::size_t dim() const { return rows_.size(); }
    Subspace to_subspace() const { return Subspace::from_vectors(p_, n_, rows_); }

  private:
    u64 p_;
    std::size_t n_;
    std::vector<std::vector<u64>> rows_;
    std::vector<std::size_t> pivots_;
};
}  // namespace

// Generating set of the action algebra: simple raisings and lowerings plus
// the torals. A subspace closed under these is closed under every basis
// element (the rest are iterated brackets).
static std::vector<int> generator_set(const LieAlg& g) {
    std::vector<int> out;
    for (int r = 0; r < g.D(); ++r)
        if (g.rd().height(r) == 1) {
            out.push_back(g.neg_index(r));
            out.push_back(g.pos_index(r));
        }
    for (int t = 0; t < g.n_torals(); ++t) out.push_back(g.toral_index(t));
    return out;
}

Subspace spin(const MatrixModule& M, const std::vector<std::vector<u64>>& vecs) {
    Eliminator el(M.p(), M.dim);
    auto gens = generator_set(*M.g);
    std::vector<std::vector<u64>> queue;
    for (const auto& v : vecs)
        if (el.insert(v) >= 0) queue.push_back(v);
    while (!queue.empty()) {
        auto v = std::move(queue.back());
        queue.pop_back();
        for (int x : gens) {
            auto img = M.act[x].apply(v);
            if (el.insert(img) >= 0) queue.push_back(std::move(img));
        }
    }
    return el.to_subspace();
}

// Does spin(v) contain the target vector? Early-exits as soon as the target
// falls into the partial span.
static bool spin_contains(const MatrixModule& M, const std::vector<int>& gens,
                          const std::vector<u64>& v, const std::vector<u64>& target) {
    Eliminator el(M.p(), M.dim);
    std::vector<std::vector<u64>> queue;
    if (el.insert(v) >= 0) queue.push_back(v);
    auto reduced_target_zero = [&] {
        auto t = target;
        el.reduce(t);
        for (u64 x : t)
            if (x) return false;
        return true;
    };
    if (reduced_target_zero()) return true;
    while (!queue.empty()) {
        auto w = std::move(queue.back());
        queue.pop_back();
        for (int x : gens) {
            auto img = M.act[x].apply(w);
            if (el.insert(img) >= 0) {
                if (reduced_target_zero()) return true;
                queue.push_back(std::move(img));
            }
        }
    }
    return false;
}

SpinWitness spin_witness(const MatrixModule& M, const std::vector<u64>& v) {
    SpinWitness w{{}, {}, {}, Subspace::zero(M.p(), M.dim)};
    Eliminator el(M.p(), M.dim);
    if (el.insert(v) < 0) {
        w.span = el.to_subspace();
        return w;
    }
    w.raw.push_back(v);
    w.parent.push_back(-1);
    w.gen.push_back(-1);
    std::size_t head = 0;
    while (head < w.raw.size()) {
        for (int x = 0; x < M.g->dim(); ++x) {
            auto img = M.act[x].apply(w.raw[head]);
            if (el.insert(img) >= 0) {
                w.raw.push_back(std::move(img));
                w.parent.push_back(int(head));
                w.gen.push_back(x);
            }
        }
        ++head;
    }
    w.span = el.to_subspace();
    return w;
}

std::vector<WeightSpace> highest_weight_vectors(const MatrixModule& M) {
    const LieAlg& g = *M.g;
    const u64 p = M.p();
    std::vector<int> simples;
    for (int r = 0; r < g.D(); ++r)
        if (g.rd().height(r) == 1) simples.push_back(g.pos_index(r));
    std::vector<WeightSpace> out;
    for (const auto& ws : weight_spaces(M)) {
        const std::size_t d = ws.space.dim();
        FpMatrix sys(p, simples.size() * M.dim, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t s = 0; s < simples.size(); ++s) {
                auto img = M.act[simples[s]].apply(ws.space.basis().row_vec(i));
                for (std::size_t k = 0; k < M.dim; ++k) sys.at(s * M.dim + k, i) = img[k];
            }
        }
        FpMatrix K = sys.kernel();
        if (K.rows() == 0) continue;
        std::vector<std::vector<u64>> vecs;
        for (std::size_t i = 0; i < K.rows(); ++i) {
            std::vector<u64> v(M.dim, 0);
            for (std::size_t j = 0; j < d; ++j) {
                u64 c = K.at(i, j);
                if (!c) continue;
                const u64* row = ws.space.basis().row(j);
                for (std::size_t k = 0; k < M.dim; ++k) v[k] = (v[k] + c * row[k]) % p;
            }
            vecs.push_back(std::move(v));
        }
        out.push_back({ws.weight, Subspace::from_vectors(p, M.dim, vecs)});
    }
    return out;
}

SubmoduleView submodule_module(const MatrixModule& M, const Subspace& S) {
    const std::size_t d = S.dim();
    MatrixModule sub{M.g, M.chi, d, {}};
    sub.act.reserve(M.g->dim());
    for (int x = 0; x < M.g->dim(); ++x) {
        FpMatrix A(M.p(), d, d);
        for (std::size_t i = 0; i < d; ++i) {
            auto img = M.act[x].apply(S.basis().row_vec(i));
            auto c = S.coords(img);  // throws if S is not action-stable
            for (std::size_t j = 0; j < d; ++j) A.at(j, i) = c[j];
        }
        sub.act.push_back(std::move(A));
    }
    return {std::move(sub), S.basis()};
}

QuotientView quotient_module(const MatrixModule& M, const Subspace& S) {
    QuotientBasis qb(S, Subspace::full(M.p(), M.dim));
    const std::size_t d = qb.dim();
    MatrixModule q{M.g, M.chi, d, {}};
    q.act.reserve(M.g->dim());
    for (int x = 0; x < M.g->dim(); ++x) {
        FpMatrix A(M.p(), d, d);
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<u64> c(d, 0);
            c[i] = 1;
            auto img = M.act[x].apply(qb.lift(c));
            auto cc = qb.coords(img);
            for (std::size_t j = 0; j < d; ++j) A.at(j, i) = cc[j];
        }
        q.act.push_back(std::move(A));
    }
    return {std::move(q), std::move(qb)};
}

static bool subspace_action_stable(const MatrixModule& M, const Subspace& S) {
    for (int x = 0; x < M.g->dim(); ++x)
        for (std::size_t i = 0; i < S.dim(); ++i)
            if (!S.contains(M.act[x].apply(S.basis().row_vec(i)))) return false;
    return true;
}

// Transvection kernel: the subspace of vectors v whose images m.v have zero
// component in the generator's full eigenspace, over all PBW monomials m of
// the appropriate weight. When that eigenspace is the line K.gen this is
// exactly the maximal submodule; in general it is a certified
// under-approximation (any u.v avoids the eigenspace entirely, so the span of
// v cannot reach gen).
static Subspace max_submodule_transvection(const MatrixModule& M, const std::vector<u64>& gen,
                                           const std::vector<WeightSpace>& ws,
                                           const WeightFp& lambda) {
    const LieAlg& g = *M.g;
    const u64 p = M.p();
    const int D = g.D();
    PrimeField F(p);

    // Change of basis adapted to the weight decomposition: the generator's
    // eigenspace first (generator leading).
    std::vector<std::vector<u64>> rows{gen};
    std::size_t top_dim = 1;
    for (const auto& s : ws) {
        bool is_top = g.rd().weights_equal_fp(s.weight, lambda, p);
        if (!is_top) continue;
        for (std::size_t i = 0; i < s.space.dim(); ++i) {
            auto r = s.space.basis().row_vec(i);
            if (!Subspace::from_vectors(p, M.dim, rows).contains(r)) {
                rows.push_back(r);
                ++top_dim;
            }
        }
    }
    for (const auto& s : ws) {
        bool is_top = g.rd().weights_equal_fp(s.weight, lambda, p);
        for (std::size_t i = 0; i < s.space.dim(); ++i)
            if (!is_top) rows.push_back(s.space.basis().row_vec(i));
    }
    FpMatrix P = FpMatrix::from_rows(p, rows);
    auto Pinv = P.transpose().inverse();
    if (!Pinv) throw std::logic_error("max_submodule: weight basis not invertible");
    // v = P^T c with c the coefficients in the row basis, so the eigenspace
    // component of v is read off the first top_dim entries of P^{-T} v.
    std::vector<std::vector<u64>> detectors;
    for (std::size_t k = 0; k < top_dim; ++k) detectors.push_back(Pinv->row_vec(k));

    // Precompute powers of the raising/lowering actions.
    std::vector<std::vector<FpMatrix>> neg_pow(D), pos_pow(D);
    for (int r = 0; r < D; ++r) {
        neg_pow[r].push_back(FpMatrix::identity(p, M.dim));
        pos_pow[r].push_back(FpMatrix::identity(p, M.dim));
        for (u64 e = 1; e < p; ++e) {
            neg_pow[r].push_back(neg_pow[r].back().mul(M.act[g.neg_index(r)]));
            pos_pow[r].push_back(pos_pow[r].back().mul(M.act[g.pos_index(r)]));
        }
    }

    auto key_of = [&](const WeightFp& w) { return g.rd().weight_key_fp(w, p); };
    std::vector<std::vector<u64>> result_rows;
    for (const auto& s : ws) {
        const std::size_t d = s.space.dim();
        // Monomial weights: lambda - mu = sum (c_r - a_r) gamma_r mod p.
        std::vector<std::vector<u64>> trows;
        std::vector<u64> target = key_of(lambda);
        // Iterate over all (a, c) in [0,p)^{2D}; idx[0..D) holds the negative
        // exponents a, idx[D..2D) the positive exponents c.
        std::vector<std::uint32_t> idx(2 * D, 0);
        while (true) {
            WeightZ shift(g.N(), 0);
            for (int r = 0; r < D; ++r) {
                auto rv = g.rd().root_vec(r);
                long long coef = (long long)idx[D + r] - (long long)idx[r];
                for (int k = 0; k < g.N(); ++k) shift[k] += coef * rv[k];
            }
            WeightFp shifted(g.N());
            for (int k = 0; k < g.N(); ++k) shifted[k] = F.add(s.weight[k] % p, F.reduce(shift[k]));
            if (key_of(shifted) == target) {
                // T_m rows: detectors . (m w_j), operators applied in PBW
                // order (positive block rightmost, acting first).
                std::vector<std::vector<u64>> rows_for_m(detectors.size(),
                                                         std::vector<u64>(d, 0));
                for (std::size_t j = 0; j < d; ++j) {
                    std::vector<u64> v = s.space.basis().row_vec(j);
                    for (int r = D - 1; r >= 0; --r)
                        if (idx[D + r]) v = pos_pow[r][idx[D + r]].apply(v);
                    for (int r = 0; r < D; ++r)
                        if (idx[r]) v = neg_pow[r][idx[r]].apply(v);
                    for (std::size_t dk = 0; dk < detectors.size(); ++dk) {
                        u64 acc = 0;
                        for (std::size_t k = 0; k < v.size(); ++k)
                            acc = F.add(acc, F.mul(detectors[dk][k], v[k]));
                        rows_for_m[dk][j] = acc;
                    }
                }
                for (auto& r : rows_for_m) trows.push_back(std::move(r));
            }
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == p) idx[i++] = 0;
            if (i == idx.size()) break;
        }
        FpMatrix sys = trows.empty() ? FpMatrix(p, 0, d) : FpMatrix::from_rows(p, trows);
        FpMatrix K = sys.rows() ? sys.kernel() : FpMatrix::identity(p, d);
        for (std::size_t i = 0; i < K.rows(); ++i)
            result_rows.push_back(combine(s.space, K.row_vec(i)));
    }
    return Subspace::from_vectors(p, M.dim, result_rows);
}

// Full spin of v unless the target is detected on the way (then nullopt).
static std::optional<std::vector<std::vector<u64>>> spin_unless_detects(
    const MatrixModule& M, const std::vector<int>& gens, const std::vector<u64>& v,
    const std::vector<u64>& target) {
    Eliminator el(M.p(), M.dim);
    std::vector<std::vector<u64>> queue, rows;
    auto target_in_span = [&] {
        auto t = target;
        el.reduce(t);
        for (u64 x : t)
            if (x) return false;
        return true;
    };
    if (el.insert(v) >= 0) {
        rows.push_back(v);
        queue.push_back(v);
    }
    if (target_in_span()) return std::nullopt;
    while (!queue.empty()) {
        auto w = std::move(queue.back());
        queue.pop_back();
        for (int x : gens) {
            auto img = M.act[x].apply(w);
            if (el.insert(img) >= 0) {
                if (target_in_span()) return std::nullopt;
                rows.push_back(img);
                queue.push_back(std::move(img));
            }
        }
    }
    return rows;
}

// Certified fallback for generators whose eigenspace is not a line: peel
// non-generating weight vectors off in successive quotients, starting from a
// transvection under-approximation. Each pass finds weight vectors of the
// current quotient failing to generate it (early-exit spin per projective
// vector, skipping vectors already inside the span found this pass); their
// spins pull back to proper submodules of M, all below the maximal one. The
// loop ends with a pass that finds nothing -- in that pass no vector was
// skipped, so the quotient is certified simple and the accumulated subspace
// is the maximal submodule.
static Subspace max_submodule_enumerate(const MatrixModule& M, const std::vector<u64>& gen,
                                        Subspace P) {
    const u64 p = M.p();
    auto gens = generator_set(*M.g);
    while (true) {
        QuotientView qv = quotient_module(M, P);
        const MatrixModule& Q = qv.mod;
        if (Q.dim == 0) throw std::logic_error("max_submodule: quotient collapsed");
        std::vector<u64> gen_q = qv.section.coords(gen);
        Eliminator known(p, Q.dim);
        bool found = false;
        for (const auto& s : weight_spaces(Q))
            for (auto& v : projective_vectors(s.space)) {
                {
                    auto t = v;
                    known.reduce(t);
                    bool zero = true;
                    for (u64 x : t) zero &= x == 0;
                    if (zero && known.dim()) continue;  // already below a found span
                }
                auto span_rows = spin_unless_detects(Q, gens, v, gen_q);
                if (!span_rows) continue;  // generates the quotient
                found = true;
                for (auto& r : *span_rows) known.insert(std::move(r));
            }
        if (!found) break;  // nothing skipped, every vector generates: simple
        std::vector<std::vector<u64>> lifts;
        for (std::size_t i = 0; i < P.dim(); ++i) lifts.push_back(P.basis().row_vec(i));
        Subspace S = known.to_subspace();
        for (std::size_t i = 0; i < S.dim(); ++i)
            lifts.push_back(qv.section.lift(S.basis().row_vec(i)));
        Subspace next = Subspace::from_vectors(p, M.dim, lifts);
        if (next.dim() <= P.dim()) throw std::logic_error("max_submodule: no progress");
        P = next;
    }
    if (P.contains(gen)) throw std::logic_error("max_submodule: generator lies in candidate radical");
    if (!subspace_action_stable(M, P))
        throw std::logic_error("max_submodule: candidate radical not action-stable");
    return P;
}

Subspace max_submodule_of_cyclic_hw(const MatrixModule& M, const std::vector<u64>& gen) {
    const LieAlg& g = *M.g;
    for (int r = 0; r < g.D(); ++r) {
        if (g.rd().height(r) != 1) continue;
        for (u64 x : M.act[g.pos_index(r)].apply(gen))
            if (x) throw std::invalid_argument("max_submodule: generator is not highest-weight");
    }
    WeightFp lambda = weight_of_vector(M, gen);
    if (spin(M, {gen}).dim() != M.dim)
        throw std::invalid_argument("max_submodule: module is not cyclic on the generator");
    auto ws = weight_spaces(M);
    const WeightSpace* top = find_weight_space(ws, M, lambda);
    if (!top) throw std::logic_error("max_submodule: generator weight space missing");
    Subspace seed = max_submodule_transvection(M, gen, ws, lambda);
    // With a one-dimensional generator eigenspace the transvection kernel is
    // the maximal submodule itself; otherwise it seeds the certified
    // enumeration.
    Subspace N = top->space.dim() == 1 ? seed : max_submodule_enumerate(M, gen, seed);
    if (N.contains(gen)) throw std::logic_error("max_submodule: generator in radical");
    if (!subspace_action_stable(M, N)) throw std::logic_error("max_submodule: result not stable");
    return N;
}

static void factors_rec(const MatrixModule& M, std::mt19937_64* rng,
                        std::map<std::vector<u64>, CompFactor>& acc) {
    if (M.dim == 0) return;
    auto hw = highest_weight_vectors(M);
    if (hw.empty()) throw std::logic_error("composition_factors: nonzero module with no hw vector");
    std::size_t pick = 0;
    if (rng) pick = (*rng)() % hw.size();
    const auto& chosen = hw[pick];
    std::vector<u64> v;
    if (rng) {
        std::vector<u64> coeffs(chosen.space.dim(), 0);
        while (std::all_of(coeffs.begin(), coeffs.end(), [](u64 c) { return c == 0; }))
            for (auto& c : coeffs) c = (*rng)() % M.p();
        v = combine(chosen.space, coeffs);
    } else {
        v = chosen.space.basis().row_vec(0);
    }
    Subspace S = spin(M, {v});
    SubmoduleView sv = submodule_module(M, S);
    auto gen_coords = S.coords(v);
    Subspace N = max_submodule_of_cyclic_hw(sv.mod, gen_coords);

    auto I = M.chi.standard_levi(*M.g);
    WeightFp label = canonical_linkage_rep(M.g->rd(), M.p(), chosen.weight,
                                           I ? *I : LeviSubset{});
    std::size_t dimL = S.dim() - N.dim();
    auto key = M.g->rd().weight_key_fp(label, M.p());
    auto it = acc.find(key);
    if (it == acc.end())
        acc.emplace(key, CompFactor{label, 1, dimL});
    else {
        if (it->second.dim_simple != dimL)
            throw std::logic_error("composition_factors: same label, different dimensions");
        it->second.mult += 1;
    }

    if (N.dim()) factors_rec(submodule_module(sv.mod, N).mod, rng, acc);
    factors_rec(quotient_module(M, S).mod, rng, acc);
}

CompFactorList composition_factors(const MatrixModule& M, std::mt19937_64* rng) {
    if (!M.chi.vanishes_on_b(*M.g))
        throw std::invalid_argument("composition_factors: requires chi vanishing on b");
    std::map<std::vector<u64>, CompFactor> acc;
    factors_rec(M, rng, acc);
    CompFactorList out;
    std::size_t total = 0;
    for (auto& [k, f] : acc) {
        total += f.mult * f.dim_simple;
        out.push_back(f);
    }
    if (total != M.dim) throw std::logic_error("composition_factors: dimensions do not sum");
    return out;
}

std::size_t total_dim(const CompFactorList& l) {
    std::size_t t = 0;
    for (const auto& f : l) t += f.mult * f.dim_simple;
    return t;
}

bool same_factors(const RootData& rd, u64 p, const CompFactorList& a, const CompFactorList& b) {
    if (a.size() != b.size()) return false;
    std::map<std::vector<u64>, std::pair<std::size_t, std::size_t>> ma, mb;
    for (const auto& f : a) ma[rd.weight_key_fp(f.label, p)] = {f.mult, f.dim_simple};
    for (const auto& f : b) mb[rd.weight_key_fp(f.label, p)] = {f.mult, f.dim_simple};
    return ma == mb;
}

bool is_equivariant(const MatrixModule& M, const MatrixModule& N, const FpMatrix& psi) {
    for (int x = 0; x < M.g->dim(); ++x)
        if (!(psi.mul(M.act[x]) == N.act[x].mul(psi))) return false;
    return true;
}

std::optional<FpMatrix> find_isomorphism(const MatrixModule& M, const MatrixModule& N) {
    if (M.dim != N.dim || M.p() != N.p() || M.chi.values != N.chi.values) return std::nullopt;
    if (M.dim == 0) return FpMatrix(M.p(), 0, 0);
    const u64 p = M.p();
    auto hwM = highest_weight_vectors(M);
    auto hwN = highest_weight_vectors(N);
    for (const auto& wsM : hwM) {
        for (std::size_t i = 0; i < wsM.space.dim(); ++i) {
            auto z = wsM.space.basis().row_vec(i);
            SpinWitness wit = spin_witness(M, z);
            if (wit.span.dim() != M.dim) continue;
            const WeightSpace* cand = find_weight_space(hwN, N, wsM.weight);
            if (!cand) continue;
            for (const auto& zn : projective_vectors(cand->space)) {
                // Apply the witness words in N.
                std::vector<std::vector<u64>> imgs(wit.raw.size());
                imgs[0] = zn;
                for (std::size_t k = 1; k < wit.raw.size(); ++k)
                    imgs[k] = N.act[wit.gen[k]].apply(imgs[wit.parent[k]]);
                FpMatrix PM(p, M.dim, M.dim), PN(p, M.dim, M.dim);
                for (std::size_t k = 0; k < M.dim; ++k)
                    for (std::size_t r = 0; r < M.dim; ++r) {
                        PM.at(r, k) = wit.raw[k][r];
                        PN.at(r, k) = imgs[k][r];
                    }
                auto PMinv = PM.inverse();
                if (!PMinv) continue;
                FpMatrix psi = PN.mul(*PMinv);
                if (!psi.inverse()) continue;
                if (is_equivariant(M, N, psi)) return psi;
            }
        }
    }
    return std::nullopt;
}

MatrixModule twist(const MatrixModule& M) {
    const LieAlg& g = *M.g;
    const u64 p = M.p();
    if (p == 2) throw std::invalid_argument("twist: needs p odd");
    MatrixModule out{M.g, M.chi, M.dim, M.act};
    for (int x = 0; x < g.dim(); ++x) {
        if (g.is_toral(x)) continue;
        int r = g.root_of(x);
        auto [i, j] = g.rd().pos_root(r);
        if ((i + j) % 2 == 1) {
            out.act[x] = M.act[x].scale(p - 1);
            out.chi.values[x] = M.chi.values[x] ? p - M.chi.values[x] : 0;
        }
    }
    return out;
}

std::vector<long long> coset_key(int N, const LeviSubset& I, const WeightZ& w) {
    std::vector<char> linked(N, 0);
    for (int i : I) linked[i] = 1;
    std::vector<long long> key;
    long long acc = 0;
    for (int i = 0; i < N; ++i) {
        acc += w[i];
        if (i + 1 == N || !linked[i]) {
            key.push_back(acc);
            acc = 0;
        }
    }
    return key;
}

GradedTag grade_decompose(const MatrixModule& M, const LeviSubset& I, const WeightZ& base,
                          std::size_t gen) {
    const LieAlg& g = *M.g;
    GradedTag tag{I, std::vector<std::vector<long long>>(M.dim)};
    std::vector<char> assigned(M.dim, 0);
    tag.coset[gen] = coset_key(g.N(), I, base);
    assigned[gen] = 1;
    std::vector<std::size_t> queue{gen};
    auto shift_of = [&](int x) { return coset_key(g.N(), I, g.ad_weight(x)); };
    while (!queue.empty()) {
        std::size_t i = queue.back();
        queue.pop_back();
        for (int x = 0; x < g.dim(); ++x) {
            auto sh = shift_of(x);
            for (std::size_t j = 0; j < M.dim; ++j) {
                if (!M.act[x].at(j, i)) continue;
                std::vector<long long> dj = tag.coset[i];
                for (std::size_t k = 0; k < dj.size(); ++k) dj[k] += sh[k];
                if (!assigned[j]) {
                    tag.coset[j] = dj;
                    assigned[j] = 1;
                    queue.push_back(j);
                } else if (tag.coset[j] != dj) {
                    throw std::logic_error("grade_decompose: action violates the grading");
                }
            }
        }
    }
    for (std::size_t i = 0; i < M.dim; ++i)
        if (!assigned[i])
            throw std::logic_error("grade_decompose: basis vector unreachable from generator");
    return tag;
}

}  // namespace redenv
