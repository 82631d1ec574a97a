#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "redenv/fp.hpp"
#include "redenv/rational.hpp"

namespace redenv {

enum class AlgKind { gl, sl };

// Refinement of the height ordering on positive roots. Height-monotone either
// way; only the tie-break within a height class differs. Results that depend
// on the ordering only through the certified multisets must agree for both.
enum class RootOrder { HeightLex, HeightRevLex };

// Weights on the epsilon-basis. For sl, two weights are the same functional
// iff their consecutive differences agree.
using WeightZ = std::vector<long long>;
using WeightFp = std::vector<u64>;
using WeightQ = std::vector<Rat>;

// A permutation w of {0..N-1}, acting on weights by sending eps_i to eps_{w(i)}.
struct WeylElement {
    std::vector<int> perm;

    explicit WeylElement(std::vector<int> p);
    static WeylElement identity(int N);
    static WeylElement transposition(int N, int i, int j);
    static WeylElement longest(int N);  // j -> N-1-j
    WeylElement inverse() const;
    WeylElement compose(const WeylElement& rhs) const;  // this after rhs
    int N() const { return int(perm.size()); }
};

// Type-A root and weight combinatorics for gl_N / sl_N: the positive roots
// eps_i - eps_j (i < j) listed so that height ht = j - i is nondecreasing.
class RootData {
  public:
    RootData(AlgKind kind, int N, RootOrder order = RootOrder::HeightLex);

    AlgKind kind() const { return kind_; }
    int N() const { return N_; }
    RootOrder order() const { return order_; }
    int D() const { return int(pos_.size()); }
    int n_torals() const { return kind_ == AlgKind::gl ? N_ : N_ - 1; }

    // r is a 0-based index into the ordered list gamma_1..gamma_D.
    std::pair<int, int> pos_root(int r) const { return pos_[r]; }
    int root_index(int i, int j) const;  // -1 if eps_i - eps_j is not positive
    int height(int r) const { return pos_[r].second - pos_[r].first; }
    WeightZ root_vec(int r) const;  // epsilon coordinates of gamma_r

    // Simple-root indices contained in gamma_r's support, i.e. whether
    // gamma_r lies in Z I for a Levi subset I.
    bool root_in_ZI(int r, const std::vector<int>& I) const;

    bool weights_equal_fp(const WeightFp& a, const WeightFp& b, u64 p) const;
    // Canonical comparison key: gl keeps coordinates, sl keeps consecutive
    // differences (both reduced mod p).
    std::vector<u64> weight_key_fp(const WeightFp& w, u64 p) const;

  private:
    AlgKind kind_;
    int N_;
    RootOrder order_;
    std::vector<std::pair<int, int>> pos_;
};

int root_height(int i, int j);  // ht(eps_i - eps_j), errors unless i < j

WeightZ rho(int N);  // (-1, -2, ..., -N)

WeightZ dot_action(const WeylElement& w, const WeightZ& lambda);
WeightQ dot_action(const WeylElement& w, const WeightQ& lambda);

// Levi subset: 0-based indices of simple roots alpha_i = eps_i - eps_{i+1}.
using LeviSubset = std::vector<int>;

// Closure of {lambda} under the dot action of the reflections s_gamma for
// gamma in Phi intersect ZI, with everything reduced mod p (translations act
// trivially there). Returned sorted by canonical key, deduplicated.
std::vector<WeightFp> linkage_orbit(const RootData& rd, u64 p, const WeightFp& lambda,
                                    const LeviSubset& I);

// Lexicographically least orbit member (by canonical key).
WeightFp canonical_linkage_rep(const RootData& rd, u64 p, const WeightFp& lambda,
                               const LeviSubset& I);

WeightFp weight_mod_p(const WeightZ& w, u64 p);
std::optional<WeightFp> weight_mod_p(const WeightQ& w, u64 p);

std::string weight_to_string(const WeightFp& w);

}  // namespace redenv
