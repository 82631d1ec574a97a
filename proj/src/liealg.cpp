#include "redenv/liealg.hpp"

#include <algorithm>
#include <stdexcept>

namespace redenv {

LieAlg::LieAlg(AlgKind kind, int N, RootOrder order) : rd_(kind, N, order) {
    const int n = dim();
    brackets_.resize(std::size_t(n) * n);
    for (int x = 0; x < n; ++x) {
        auto X = matrix_of(x);
        for (int y = 0; y < n; ++y) {
            auto Y = matrix_of(y);
            std::vector<long long> comm(std::size_t(N) * N, 0);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    long long s = 0;
                    for (int k = 0; k < N; ++k)
                        s += X[i * N + k] * Y[k * N + j] - Y[i * N + k] * X[k * N + j];
                    comm[i * N + j] = s;
                }
            brackets_[std::size_t(x) * n + y] = expand(comm);
        }
    }
}

int LieAlg::root_of(int idx) const {
    if (is_neg(idx)) return idx;
    if (is_pos(idx)) return idx - D() - n_torals();
    return -1;
}

int LieAlg::matrix_unit_index(int i, int j) const {
    if (i == j) throw std::invalid_argument("matrix_unit_index: diagonal is not a single basis element");
    if (i < j) return pos_index(rd_.root_index(i, j));
    return neg_index(rd_.root_index(j, i));
}

std::string LieAlg::basis_name(int idx) const {
    if (is_toral(idx)) {
        int t = idx - D();
        if (kind() == AlgKind::gl) return "e" + std::to_string(t + 1) + std::to_string(t + 1);
        return "h" + std::to_string(t + 1);
    }
    int r = root_of(idx);
    auto [i, j] = rd_.pos_root(r);
    if (is_neg(idx)) return "e" + std::to_string(j + 1) + std::to_string(i + 1);
    return "e" + std::to_string(i + 1) + std::to_string(j + 1);
}

std::vector<long long> LieAlg::matrix_of(int idx) const {
    const int N = this->N();
    std::vector<long long> m(std::size_t(N) * N, 0);
    if (is_toral(idx)) {
        int t = idx - D();
        if (kind() == AlgKind::gl) {
            m[t * N + t] = 1;
        } else {
            m[t * N + t] = 1;
            m[(t + 1) * N + (t + 1)] = -1;
        }
        return m;
    }
    int r = root_of(idx);
    auto [i, j] = rd_.pos_root(r);
    if (is_neg(idx))
        m[j * N + i] = 1;
    else
        m[i * N + j] = 1;
    return m;
}

// Expand an N x N integer matrix in the basis. Off-diagonal entries map to
// root vectors; the diagonal part goes to the torals (for sl it must be
// trace-zero, expanded via partial sums against h_1..h_{N-1}).
std::vector<LieAlg::Term> LieAlg::expand(const std::vector<long long>& mat) const {
    const int N = this->N();
    std::vector<Term> out;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (i != j && mat[i * N + j] != 0)
                out.push_back({matrix_unit_index(i, j), mat[i * N + j]});
    if (kind() == AlgKind::gl) {
        for (int i = 0; i < N; ++i)
            if (mat[i * N + i] != 0) out.push_back({toral_index(i), mat[i * N + i]});
    } else {
        long long trace = 0;
        for (int i = 0; i < N; ++i) trace += mat[i * N + i];
        if (trace != 0) throw std::logic_error("expand: non-trace-free diagonal in sl");
        long long acc = 0;
        for (int i = 0; i + 1 < N; ++i) {
            acc += mat[i * N + i];
            if (acc != 0) out.push_back({toral_index(i), acc});
        }
    }
    return out;
}

std::vector<LieAlg::Term> LieAlg::p_power(int x, u64 /*p*/) const {
    // Root vectors square to zero; torals are diagonal with entries in
    // {-1,0,1}, so the p-th power (p odd) is the matrix itself.
    if (!is_toral(x)) return {};
    return {{x, 1}};
}

WeightZ LieAlg::ad_weight(int idx) const {
    WeightZ w(N(), 0);
    if (is_toral(idx)) return w;
    int r = root_of(idx);
    auto rv = rd_.root_vec(r);
    if (is_neg(idx))
        for (auto& v : rv) v = -v;
    return rv;
}

long long LieAlg::eval_on_toral(const WeightZ& eps, int t) const {
    if (kind() == AlgKind::gl) return eps[t];
    return eps[t] - eps[t + 1];
}

u64 LieAlg::eval_weight_fp(const WeightFp& lambda, int t, u64 p) const {
    PrimeField F(p);
    if (kind() == AlgKind::gl) return lambda[t] % p;
    return F.sub(lambda[t] % p, lambda[t + 1] % p);
}

Rat LieAlg::eval_weight_q(const WeightQ& lambda, int t) const {
    if (kind() == AlgKind::gl) return lambda[t];
    return lambda[t] - lambda[t + 1];
}

std::shared_ptr<const LieAlg> make_alg(AlgKind kind, int N, RootOrder order) {
    return std::make_shared<const LieAlg>(kind, N, order);
}

ChiForm ChiForm::negated() const {
    ChiForm out(p, values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i] = values[i] ? p - values[i] : 0;
    return out;
}

ChiForm ChiForm::plus(const ChiForm& o) const {
    if (p != o.p || values.size() != o.values.size())
        throw std::invalid_argument("ChiForm::plus: mismatch");
    ChiForm out(p, values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        u64 s = values[i] + o.values[i];
        out.values[i] = s >= p ? s - p : s;
    }
    return out;
}

bool ChiForm::vanishes_on_npos(const LieAlg& g) const {
    for (int r = 0; r < g.D(); ++r)
        if (values[g.pos_index(r)]) return false;
    return true;
}

bool ChiForm::vanishes_on_b(const LieAlg& g) const {
    if (!vanishes_on_npos(g)) return false;
    for (int t = 0; t < g.n_torals(); ++t)
        if (values[g.toral_index(t)]) return false;
    return true;
}

std::optional<LeviSubset> ChiForm::standard_levi(const LieAlg& g) const {
    if (!vanishes_on_b(g)) return std::nullopt;
    LeviSubset I;
    for (int r = 0; r < g.D(); ++r) {
        if (!values[g.neg_index(r)]) continue;
        if (g.rd().height(r) != 1) return std::nullopt;
        I.push_back(g.rd().pos_root(r).first);
    }
    std::sort(I.begin(), I.end());
    return I;
}

ChiForm chi_zero(const LieAlg& g, u64 p) { return ChiForm(p, g.dim()); }

ChiForm chi_regular_nilpotent(const LieAlg& g, u64 p) {
    ChiForm chi(p, g.dim());
    for (int r = 0; r < g.D(); ++r)
        if (g.rd().height(r) == 1) chi.values[g.neg_index(r)] = 1;
    return chi;
}

u64 central_scalar(const LieAlg& /*g*/, const ChiForm& chi, int idx) {
    PrimeField F(chi.p);
    return F.pow(chi(idx), chi.p);
}

bool in_lambda_chi(const LieAlg& g, const ChiForm& chi, const WeightFp& lambda) {
    PrimeField F(chi.p);
    for (int t = 0; t < g.n_torals(); ++t) {
        u64 lh = g.eval_weight_fp(lambda, t, chi.p);
        // h^{[p]} = h for every toral basis element here, so the condition is
        // lambda(h)^p - lambda(h) = chi(h)^p.
        u64 lhs = F.sub(F.pow(lh, chi.p), lh);
        if (lhs != central_scalar(g, chi, g.toral_index(t))) return false;
    }
    return true;
}

}  // namespace redenv
