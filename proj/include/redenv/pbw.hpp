#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "redenv/liealg.hpp"
#include "redenv/rational.hpp"

namespace redenv {

// PBW-ordered monomial in U(g) / U_chi(g):
//   e_{-gamma_D}^{neg[D-1]} ... e_{-gamma_1}^{neg[0]}
//   * h_1^{tor[0]} ... h_T^{tor[T-1]}
//   * e_{gamma_1}^{pos[0]} ... e_{gamma_D}^{pos[D-1]}
// Negative block ordered with the highest root leftmost, matching the
// monomial basis of the baby Verma modules.
struct PBWMonomial {
    std::vector<std::uint32_t> neg, tor, pos;

    static PBWMonomial unit(const LieAlg& g) {
        return {std::vector<std::uint32_t>(g.D(), 0), std::vector<std::uint32_t>(g.n_torals(), 0),
                std::vector<std::uint32_t>(g.D(), 0)};
    }
    bool operator==(const PBWMonomial& o) const = default;
    auto operator<=>(const PBWMonomial& o) const = default;
    std::uint64_t total_neg_degree() const {
        std::uint64_t s = 0;
        for (auto e : neg) s += e;
        return s;
    }
    bool pos_trivial() const {
        for (auto e : pos)
            if (e) return false;
        return true;
    }
};

template <class K>
using PBWElem = std::map<PBWMonomial, K>;

// Coefficient policies. FpCoeffs straightens in U_chi(g) over F_p, reducing
// every p-th power via x^p = x^{[p]} + chi(x)^p. QCoeffs straightens in U(g)
// over Q with unbounded exponents.
struct FpCoeffs {
    using K = u64;
    static constexpr bool reduces = true;
    PrimeField F;
    ChiForm chi;

    FpCoeffs(u64 p, ChiForm c) : F(p), chi(std::move(c)) {}
    K from_ll(long long v) const { return F.reduce(v); }
    K mul(K a, K b) const { return F.mul(a, b); }
    K add(K a, K b) const { return F.add(a, b); }
    K div_small(K a, u64 k) const { return F.mul(a, F.inv(k % F.p)); }
    static bool is_zero(K a) { return a == 0; }
};

struct QCoeffs {
    using K = Rat;
    static constexpr bool reduces = false;
    K from_ll(long long v) const { return Rat(v); }
    K mul(const K& a, const K& b) const { return a * b; }
    K add(const K& a, const K& b) const { return a + b; }
    K div_small(const K& a, u64 k) const { return a / Rat(k); }
    static bool is_zero(const K& a) { return a == 0; }
};

// Exact rewriting into the PBW basis by generator-by-generator left
// multiplication. Commutators come from the matrix realization; the only
// identity used is X Y^a = sum_k C(a,k) Y^{a-k} (ad_Y)^k(X) with
// (ad_Y)(X) = [X, Y].
template <class C>
class Straightener {
  public:
    using K = typename C::K;

    Straightener(std::shared_ptr<const LieAlg> g, C coeffs)
        : g_(std::move(g)), c_(std::move(coeffs)) {}

    const LieAlg& alg() const { return *g_; }
    const C& coeffs() const { return c_; }

    PBWElem<K> one() const { return {{PBWMonomial::unit(*g_), c_.from_ll(1)}}; }

    void add_term(PBWElem<K>& e, const PBWMonomial& m, const K& c) const {
        if (C::is_zero(c)) return;
        auto it = e.find(m);
        if (it == e.end()) {
            e.emplace(m, c);
        } else {
            it->second = c_.add(it->second, c);
            if (C::is_zero(it->second)) e.erase(it);
        }
    }

    PBWElem<K> mul_basis(int x, const PBWElem<K>& e) const {
        PBWElem<K> out;
        for (const auto& [m, c] : e) accumulate(out, mul_one(x, m, c, 0));
        return out;
    }

    PBWElem<K> mul_mono(const PBWMonomial& m, const PBWElem<K>& e) const {
        PBWElem<K> acc = e;
        // Apply the letters of m right-to-left.
        for (int r = g_->D() - 1; r >= 0; --r)
            for (std::uint32_t k = 0; k < m.pos[r]; ++k) acc = mul_basis(g_->pos_index(r), acc);
        for (int t = g_->n_torals() - 1; t >= 0; --t)
            for (std::uint32_t k = 0; k < m.tor[t]; ++k) acc = mul_basis(g_->toral_index(t), acc);
        for (int r = 0; r < g_->D(); ++r)
            for (std::uint32_t k = 0; k < m.neg[r]; ++k) acc = mul_basis(g_->neg_index(r), acc);
        return acc;
    }

    PBWElem<K> mul(const PBWElem<K>& a, const PBWElem<K>& b) const {
        PBWElem<K> out;
        for (const auto& [m, c] : a) {
            PBWElem<K> part = mul_mono(m, b);
            for (auto& [m2, c2] : part) add_term(out, m2, c_.mul(c, c2));
        }
        return out;
    }

    // Product of basis-element powers, leftmost factor first.
    PBWElem<K> straighten_word(const std::vector<std::pair<int, u64>>& word) const {
        PBWElem<K> acc = one();
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            for (u64 k = 0; k < it->second; ++k) acc = mul_basis(it->first, acc);
        return acc;
    }

  private:
    std::shared_ptr<const LieAlg> g_;
    C c_;

    static void accumulate_into(PBWElem<K>&, PBWElem<K>&&);

    void accumulate(PBWElem<K>& dst, PBWElem<K>&& src) const {
        for (auto& [m, c] : src) add_term(dst, m, c);
    }

    // c * (x . m), fully straightened.
    PBWElem<K> mul_one(int x, const PBWMonomial& m, K c, int depth) const {
        if (depth > 256) throw std::logic_error("straighten: recursion depth exceeded");
        if (C::is_zero(c)) return {};
        const int D = g_->D(), T = g_->n_torals();

        // Leftmost letter of m standing between the entry point (far left)
        // and x's slot.
        int block = -1;  // 0 = neg, 1 = tor, 2 = pos
        int letter = -1;
        if (g_->is_neg(x)) {
            int r = x;
            for (int l = D - 1; l > r; --l)
                if (m.neg[l]) { block = 0; letter = l; break; }
        } else if (g_->is_toral(x)) {
            for (int l = D - 1; l >= 0; --l)
                if (m.neg[l]) { block = 0; letter = l; break; }
        } else {
            int s = g_->root_of(x);
            for (int l = D - 1; l >= 0 && block < 0; --l)
                if (m.neg[l]) { block = 0; letter = l; }
            for (int t = 0; t < T && block < 0; ++t)
                if (m.tor[t]) { block = 1; letter = t; }
            for (int l = 0; l < s && block < 0; ++l)
                if (m.pos[l]) { block = 2; letter = l; }
        }
        if (block < 0) return insert(x, m, c);

        int y = block == 0 ? g_->neg_index(letter)
                           : (block == 1 ? g_->toral_index(letter) : g_->pos_index(letter));
        std::uint32_t a = block == 0 ? m.neg[letter] : (block == 1 ? m.tor[letter] : m.pos[letter]);
        PBWMonomial rest = m;
        (block == 0 ? rest.neg[letter] : block == 1 ? rest.tor[letter] : rest.pos[letter]) = 0;

        PBWElem<K> out;
        std::vector<LieAlg::Term> dk{{x, 1}};  // (ad_y)^k of x, as basis terms
        K binom = c_.from_ll(1);               // C(a, k)
        for (std::uint32_t k = 0; k <= a && !dk.empty(); ++k) {
            if (k > 0) {
                binom = c_.div_small(c_.mul(binom, c_.from_ll((long long)(a - k + 1))), k);
                std::map<int, long long> next;
                for (const auto& t : dk)
                    for (const auto& b : g_->bracket(t.idx, y)) next[b.idx] += t.c * b.c;
                dk.clear();
                for (auto& [idx, coeff] : next)
                    if (coeff) dk.push_back({idx, coeff});
            }
            if (C::is_zero(binom)) continue;
            PBWElem<K> sub;
            for (const auto& t : dk) {
                K cc = c_.mul(c, c_.mul(binom, c_.from_ll(t.c)));
                accumulate(sub, mul_one(t.idx, rest, cc, depth + 1));
            }
            // Re-attach y^{a-k} on the left.
            for (std::uint32_t j = 0; j < a - k; ++j) {
                PBWElem<K> lifted;
                for (const auto& [m2, c2] : sub) accumulate(lifted, mul_one(y, m2, c2, depth + 1));
                sub = std::move(lifted);
            }
            accumulate(out, std::move(sub));
        }
        return out;
    }

    PBWElem<K> insert(int x, const PBWMonomial& m, K c) const {
        PBWMonomial m2 = m;
        PBWElem<K> out;
        if (g_->is_neg(x)) {
            if (++m2.neg[x] == cap()) {
                // e^p = chi(e)^p in U_chi (restricted power of a root vector is 0)
                m2.neg[x] = 0;
                c = scale_by_central(x, c);
            }
            add_term(out, m2, c);
        } else if (g_->is_toral(x)) {
            int t = x - g_->D();
            if (++m2.tor[t] == cap()) {
                // h^p = h + chi(h)^p (h^{[p]} = h for these torals)
                m2.tor[t] = 1;
                add_term(out, m2, c);
                m2.tor[t] = 0;
                add_term(out, m2, scale_by_central(x, c));
            } else {
                add_term(out, m2, c);
            }
        } else {
            int r = g_->root_of(x);
            if (++m2.pos[r] == cap()) {
                m2.pos[r] = 0;
                c = scale_by_central(x, c);
            }
            add_term(out, m2, c);
        }
        return out;
    }

    std::uint32_t cap() const {
        if constexpr (C::reduces)
            return std::uint32_t(c_.F.p);
        else
            return 0;  // never reached: ++exp != 0
    }

    K scale_by_central(int x, K c) const {
        if constexpr (C::reduces)
            return c_.mul(c, central_scalar(*g_, c_.chi, x));
        else
            throw std::logic_error("unreachable");
    }
};

using FpStraightener = Straightener<FpCoeffs>;
using QStraightener = Straightener<QCoeffs>;

// The straighten operation of the enveloping-algebra layer: rewrite a product
// of basis-element powers into the PBW basis of U_chi(g).
inline PBWElem<u64> straighten(std::shared_ptr<const LieAlg> g, const ChiForm& chi,
                               const std::vector<std::pair<int, u64>>& word) {
    FpStraightener st(std::move(g), FpCoeffs(chi.p, chi));
    return st.straighten_word(word);
}

}  // namespace redenv
