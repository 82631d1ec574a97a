#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "redenv/fp.hpp"

namespace redenv {

// Exact rationals with arbitrary-precision integer parts, always in lowest
// terms (cpp_rational normalizes on construction).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Reduce an exact rational mod p. Fails (nullopt) iff p divides the
// denominator.
inline std::optional<u64> rat_mod_p(const Rat& r, u64 p) {
    Int num = rat_num(r) % p;
    Int den = rat_den(r) % p;
    if (den == 0) return std::nullopt;
    if (num < 0) num += p;
    PrimeField F(p);
    return F.mul(u64(num), F.inv(u64(den)));
}

// Dense matrix over Q; only what the characteristic-zero window needs.
class RatMatrix {
  public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<Rat> apply(const std::vector<Rat>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("RatMatrix::apply: length mismatch");
        std::vector<Rat> y(rows_, Rat(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (a_[i * cols_ + j] != 0 && x[j] != 0) y[i] += a_[i * cols_ + j] * x[j];
        return y;
    }

    std::size_t rref_in_place() {
        std::size_t lead = 0, r = 0;
        for (; lead < cols_ && r < rows_; ++lead) {
            std::size_t piv = r;
            while (piv < rows_ && at(piv, lead) == 0) ++piv;
            if (piv == rows_) continue;
            if (piv != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(r, j));
            Rat inv = Rat(1) / at(r, lead);
            for (std::size_t j = lead; j < cols_; ++j)
                if (at(r, j) != 0) at(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r) continue;
                Rat f = at(i, lead);
                if (f == 0) continue;
                for (std::size_t j = lead; j < cols_; ++j)
                    if (at(r, j) != 0) at(i, j) -= f * at(r, j);
            }
            ++r;
        }
        return r;
    }

    std::vector<std::size_t> pivot_columns() const {
        std::vector<std::size_t> piv;
        for (std::size_t i = 0; i < rows_; ++i) {
            std::size_t j = 0;
            while (j < cols_ && at(i, j) == 0) ++j;
            if (j < cols_) piv.push_back(j);
        }
        return piv;
    }

    // All denominators appearing in the entries (in lowest terms).
    std::set<Int> denominators() const {
        std::set<Int> out;
        for (const Rat& r : a_)
            if (rat_den(r) != 1) out.insert(rat_den(r));
        return out;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

}  // namespace redenv
