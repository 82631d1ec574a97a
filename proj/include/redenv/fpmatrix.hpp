#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "redenv/fp.hpp"

namespace redenv {

// Dense row-major matrix over F_p. Exact arithmetic only; entries always
// reduced to [0, p). Sized for the desk scale of this library (dims up to a
// few thousand), so no blocking or fancy kernels -- just lazy reduction in
// the inner loops.
class FpMatrix {
  public:
    FpMatrix() : p_(3), rows_(0), cols_(0) {}
    FpMatrix(u64 p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static FpMatrix identity(u64 p, std::size_t n);
    static FpMatrix from_rows(u64 p, const std::vector<std::vector<u64>>& rows);

    u64 p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    u64& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    u64 at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    u64* row(std::size_t i) { return a_.data() + i * cols_; }
    const u64* row(std::size_t i) const { return a_.data() + i * cols_; }

    std::vector<u64> row_vec(std::size_t i) const {
        return std::vector<u64>(row(i), row(i) + cols_);
    }

    bool operator==(const FpMatrix& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    bool is_zero() const;

    FpMatrix transpose() const;
    FpMatrix mul(const FpMatrix& rhs) const;
    FpMatrix add(const FpMatrix& rhs) const;
    FpMatrix sub(const FpMatrix& rhs) const;
    FpMatrix scale(u64 c) const;
    FpMatrix pow(u64 e) const;

    // y = M x (x given as column vector of length cols()).
    std::vector<u64> apply(const std::vector<u64>& x) const;

    // In-place Gauss-Jordan to reduced row echelon form; returns rank.
    // If transform != nullptr it must be an identity-compatible matrix with
    // the same number of rows; the same row operations are applied to it.
    std::size_t rref_in_place(FpMatrix* transform = nullptr);

    std::pair<FpMatrix, std::size_t> rref() const;
    std::size_t rank() const;

    // Basis of the right null space {x : Mx = 0}, returned as rows in rref.
    FpMatrix kernel() const;

    std::optional<FpMatrix> inverse() const;

    // Pivot column of each rref row (valid on rref matrices).
    std::vector<std::size_t> pivot_columns() const;

  private:
    u64 p_;
    std::size_t rows_, cols_;
    std::vector<u64> a_;
};

}  // namespace redenv
