#include "redenv/rootdata.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace redenv {

WeylElement::WeylElement(std::vector<int> p) : perm(std::move(p)) {
    std::vector<char> seen(perm.size(), 0);
    for (int v : perm) {
        if (v < 0 || v >= int(perm.size()) || seen[v])
            throw std::invalid_argument("WeylElement: not a permutation");
        seen[v] = 1;
    }
}

WeylElement WeylElement::identity(int N) {
    std::vector<int> p(N);
    for (int i = 0; i < N; ++i) p[i] = i;
    return WeylElement(p);
}

WeylElement WeylElement::transposition(int N, int i, int j) {
    WeylElement w = identity(N);
    std::swap(w.perm[i], w.perm[j]);
    return w;
}

WeylElement WeylElement::longest(int N) {
    std::vector<int> p(N);
    for (int i = 0; i < N; ++i) p[i] = N - 1 - i;
    return WeylElement(p);
}

WeylElement WeylElement::inverse() const {
    std::vector<int> q(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) q[perm[i]] = int(i);
    return WeylElement(q);
}

WeylElement WeylElement::compose(const WeylElement& rhs) const {
    std::vector<int> q(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) q[i] = perm[rhs.perm[i]];
    return WeylElement(q);
}

RootData::RootData(AlgKind kind, int N, RootOrder order) : kind_(kind), N_(N), order_(order) {
    if (N < 1) throw std::invalid_argument("RootData: N must be positive");
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) pos_.push_back({i, j});
    std::stable_sort(pos_.begin(), pos_.end(), [order](auto a, auto b) {
        int ha = a.second - a.first, hb = b.second - b.first;
        if (ha != hb) return ha < hb;
        if (order == RootOrder::HeightLex) return a < b;
        return a > b;
    });
}

int RootData::root_index(int i, int j) const {
    for (int r = 0; r < D(); ++r)
        if (pos_[r] == std::make_pair(i, j)) return r;
    return -1;
}

WeightZ RootData::root_vec(int r) const {
    WeightZ v(N_, 0);
    v[pos_[r].first] = 1;
    v[pos_[r].second] = -1;
    return v;
}

bool RootData::root_in_ZI(int r, const LeviSubset& I) const {
    auto [i, j] = pos_[r];
    for (int k = i; k < j; ++k)
        if (std::find(I.begin(), I.end(), k) == I.end()) return false;
    return true;
}

bool RootData::weights_equal_fp(const WeightFp& a, const WeightFp& b, u64 p) const {
    return weight_key_fp(a, p) == weight_key_fp(b, p);
}

std::vector<u64> RootData::weight_key_fp(const WeightFp& w, u64 p) const {
    if (int(w.size()) != N_) throw std::invalid_argument("weight_key_fp: bad length");
    if (kind_ == AlgKind::gl) {
        std::vector<u64> k(w);
        for (auto& x : k) x %= p;
        return k;
    }
    std::vector<u64> k(N_ - 1);
    for (int i = 0; i + 1 < N_; ++i) k[i] = (w[i] % p + p - w[i + 1] % p) % p;
    return k;
}

int root_height(int i, int j) {
    if (i >= j) throw std::invalid_argument("root_height: need i < j for a positive root");
    return j - i;
}

WeightZ rho(int N) {
    WeightZ r(N);
    for (int i = 0; i < N; ++i) r[i] = -(i + 1);
    return r;
}

template <class S>
static std::vector<S> dot_impl(const WeylElement& w, const std::vector<S>& lambda) {
    const int N = w.N();
    if (int(lambda.size()) != N) throw std::invalid_argument("dot_action: length mismatch");
    WeightZ rh = rho(N);
    std::vector<S> shifted(N);
    for (int i = 0; i < N; ++i) shifted[i] = lambda[i] + S(rh[i]);
    std::vector<S> out(N);
    for (int i = 0; i < N; ++i) out[w.perm[i]] = shifted[i];
    for (int i = 0; i < N; ++i) out[i] -= S(rh[i]);
    return out;
}

WeightZ dot_action(const WeylElement& w, const WeightZ& lambda) { return dot_impl(w, lambda); }
WeightQ dot_action(const WeylElement& w, const WeightQ& lambda) { return dot_impl(w, lambda); }

// s_gamma . lambda = lambda - <lambda + rho, gamma^vee> gamma, all mod p.
static WeightFp dot_reflect_fp(const RootData& rd, u64 p, const WeightFp& lambda, int r) {
    auto [i, j] = rd.pos_root(r);
    PrimeField F(p);
    WeightZ rh = rho(rd.N());
    u64 li = F.add(lambda[i] % p, F.reduce(rh[i]));
    u64 lj = F.add(lambda[j] % p, F.reduce(rh[j]));
    u64 c = F.sub(li, lj);  // <lambda + rho, gamma^vee>
    WeightFp out = lambda;
    out[i] = F.sub(out[i] % p, c);
    out[j] = F.add(out[j] % p, c);
    return out;
}

std::vector<WeightFp> linkage_orbit(const RootData& rd, u64 p, const WeightFp& lambda,
                                    const LeviSubset& I) {
    std::map<std::vector<u64>, WeightFp> seen;
    std::vector<WeightFp> queue{lambda};
    seen[rd.weight_key_fp(lambda, p)] = lambda;
    std::vector<int> levi_roots;
    for (int r = 0; r < rd.D(); ++r)
        if (rd.root_in_ZI(r, I)) levi_roots.push_back(r);
    while (!queue.empty()) {
        WeightFp w = queue.back();
        queue.pop_back();
        for (int r : levi_roots) {
            WeightFp img = dot_reflect_fp(rd, p, w, r);
            auto key = rd.weight_key_fp(img, p);
            if (!seen.count(key)) {
                seen[key] = img;
                queue.push_back(img);
            }
        }
    }
    std::vector<WeightFp> out;
    for (auto& [k, v] : seen) out.push_back(v);
    return out;
}

WeightFp canonical_linkage_rep(const RootData& rd, u64 p, const WeightFp& lambda,
                               const LeviSubset& I) {
    return linkage_orbit(rd, p, lambda, I).front();
}

WeightFp weight_mod_p(const WeightZ& w, u64 p) {
    PrimeField F(p);
    WeightFp out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = F.reduce(w[i]);
    return out;
}

std::optional<WeightFp> weight_mod_p(const WeightQ& w, u64 p) {
    WeightFp out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto v = rat_mod_p(w[i], p);
        if (!v) return std::nullopt;
        out[i] = *v;
    }
    return out;
}

std::string weight_to_string(const WeightFp& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w[i]);
    }
    return s + ")";
}

}  // namespace redenv
