#pragma once

#include <vector>

#include "redenv/fpmatrix.hpp"

namespace redenv {

// A subspace of F_p^n, canonicalized as the rref of a spanning set. Two
// subspaces are equal iff their canonical bases are identical, so structural
// equality is semantic equality.
class Subspace {
  public:
    Subspace(u64 p, std::size_t ambient) : ambient_(ambient), basis_(p, 0, ambient) {}

    static Subspace from_rows(const FpMatrix& rows);
    static Subspace from_vectors(u64 p, std::size_t ambient, const std::vector<std::vector<u64>>& vecs);
    static Subspace zero(u64 p, std::size_t ambient) { return Subspace(p, ambient); }
    static Subspace full(u64 p, std::size_t ambient) {
        return from_rows(FpMatrix::identity(p, ambient));
    }

    u64 p() const { return basis_.p(); }
    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const FpMatrix& basis() const { return basis_; }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

    // Canonical representative of v + (this): v minus its projection onto the
    // pivot coordinates. Returns the zero vector iff v is a member.
    std::vector<u64> reduce(const std::vector<u64>& v) const;
    bool contains(const std::vector<u64>& v) const;
    bool contains(const Subspace& o) const;

    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;

    // Coordinates of a member vector with respect to the canonical basis.
    std::vector<u64> coords(const std::vector<u64>& v) const;

  private:
    std::size_t ambient_;
    FpMatrix basis_;  // rref, no zero rows
};

// Every nonzero vector of the subspace up to scalar (coefficient vectors with
// first nonzero entry 1). Throws once p^dim exceeds the budget.
std::vector<std::vector<u64>> projective_vectors(const Subspace& s, double budget = 2e5);

// Basis of a quotient T/S represented by canonical lifts: the rows of T's
// basis reduced mod S and re-echelonized. Provides coordinates of (v + S) and
// lifts back to the ambient space, keeping iterated quotients exact.
class QuotientBasis {
  public:
    QuotientBasis(const Subspace& sub, const Subspace& total);

    std::size_t dim() const { return reps_.rows(); }
    const Subspace& denominator() const { return den_; }
    const FpMatrix& reps() const { return reps_; }

    std::vector<u64> coords(const std::vector<u64>& v) const;  // v must lie in T + S
    std::vector<u64> lift(const std::vector<u64>& coords) const;

  private:
    Subspace den_;
    FpMatrix reps_;  // rref rows, pivots disjoint from den_'s pivots
};

}  // namespace redenv
