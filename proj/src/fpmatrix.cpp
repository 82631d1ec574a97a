#include "redenv/fpmatrix.hpp"

#include <stdexcept>

namespace redenv {

FpMatrix FpMatrix::identity(u64 p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % p;
    return m;
}

FpMatrix FpMatrix::from_rows(u64 p, const std::vector<std::vector<u64>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    FpMatrix m(p, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("from_rows: ragged input");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j] % p;
    }
    return m;
}

bool FpMatrix::is_zero() const {
    for (u64 v : a_)
        if (v) return false;
    return true;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

FpMatrix FpMatrix::mul(const FpMatrix& rhs) const {
    if (cols_ != rhs.rows_ || p_ != rhs.p_) throw std::invalid_argument("mul: shape/field mismatch");
    FpMatrix out(p_, rows_, rhs.cols_);
    // Accumulate unreduced: each term < p^2, so up to 2^63/p^2 terms are safe
    // per reduction. Chunk the k-loop accordingly.
    const u64 per = (u64(1) << 62) / ((p_ - 1) * (p_ - 1));
    const std::size_t chunk = per < 1 ? 1 : (per > cols_ ? cols_ : std::size_t(per));
    for (std::size_t i = 0; i < rows_; ++i) {
        u64* dst = out.row(i);
        const u64* lhs_row = row(i);
        for (std::size_t k0 = 0; k0 < cols_; k0 += chunk) {
            std::size_t k1 = std::min(cols_, k0 + chunk);
            for (std::size_t k = k0; k < k1; ++k) {
                u64 a = lhs_row[k];
                if (!a) continue;
                const u64* src = rhs.row(k);
                for (std::size_t j = 0; j < rhs.cols_; ++j) dst[j] += a * src[j];
            }
            if (k1 != cols_)
                for (std::size_t j = 0; j < rhs.cols_; ++j) dst[j] %= p_;
        }
        for (std::size_t j = 0; j < rhs.cols_; ++j) dst[j] %= p_;
    }
    return out;
}

FpMatrix FpMatrix::add(const FpMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
        throw std::invalid_argument("add: shape mismatch");
    FpMatrix out(p_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) {
        u64 s = a_[i] + rhs.a_[i];
        out.a_[i] = s >= p_ ? s - p_ : s;
    }
    return out;
}

FpMatrix FpMatrix::sub(const FpMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
        throw std::invalid_argument("sub: shape mismatch");
    FpMatrix out(p_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
        out.a_[i] = a_[i] >= rhs.a_[i] ? a_[i] - rhs.a_[i] : a_[i] + p_ - rhs.a_[i];
    return out;
}

FpMatrix FpMatrix::scale(u64 c) const {
    FpMatrix out(p_, rows_, cols_);
    c %= p_;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = (a_[i] * c) % p_;
    return out;
}

FpMatrix FpMatrix::pow(u64 e) const {
    if (rows_ != cols_) throw std::invalid_argument("pow: matrix not square");
    FpMatrix r = identity(p_, rows_);
    FpMatrix b = *this;
    while (e) {
        if (e & 1) r = r.mul(b);
        b = b.mul(b);
        e >>= 1;
    }
    return r;
}

std::vector<u64> FpMatrix::apply(const std::vector<u64>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: length mismatch");
    std::vector<u64> y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const u64* r = row(i);
        u64 acc = 0;
        const u64 per = (u64(1) << 62) / ((p_ - 1) * (p_ - 1));
        std::size_t cnt = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            acc += r[j] * x[j];
            if (++cnt == per) { acc %= p_; cnt = 0; }
        }
        y[i] = acc % p_;
    }
    return y;
}

std::size_t FpMatrix::rref_in_place(FpMatrix* transform) {
    PrimeField F(p_);
    std::size_t lead = 0, r = 0;
    for (; lead < cols_ && r < rows_; ++lead) {
        std::size_t piv = r;
        while (piv < rows_ && at(piv, lead) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(r, j));
            if (transform)
                for (std::size_t j = 0; j < transform->cols(); ++j)
                    std::swap(transform->at(piv, j), transform->at(r, j));
        }
        u64 inv = F.inv(at(r, lead));
        if (inv != 1) {
            for (std::size_t j = lead; j < cols_; ++j) at(r, j) = (at(r, j) * inv) % p_;
            if (transform)
                for (std::size_t j = 0; j < transform->cols(); ++j)
                    transform->at(r, j) = (transform->at(r, j) * inv) % p_;
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            u64 f = at(i, lead);
            if (!f) continue;
            u64 fneg = p_ - f;
            const u64* src = row(r);
            u64* dst = row(i);
            for (std::size_t j = lead; j < cols_; ++j) dst[j] = (dst[j] + fneg * src[j]) % p_;
            if (transform) {
                const u64* ts = transform->row(r);
                u64* td = transform->row(i);
                for (std::size_t j = 0; j < transform->cols(); ++j)
                    td[j] = (td[j] + fneg * ts[j]) % p_;
            }
        }
        ++r;
    }
    return r;
}

std::pair<FpMatrix, std::size_t> FpMatrix::rref() const {
    FpMatrix m = *this;
    std::size_t rk = m.rref_in_place();
    return {m, rk};
}

std::size_t FpMatrix::rank() const {
    FpMatrix m = *this;
    return m.rref_in_place();
}

std::vector<std::size_t> FpMatrix::pivot_columns() const {
    std::vector<std::size_t> piv;
    for (std::size_t i = 0; i < rows_; ++i) {
        std::size_t j = 0;
        while (j < cols_ && at(i, j) == 0) ++j;
        if (j < cols_) piv.push_back(j);
    }
    return piv;
}

FpMatrix FpMatrix::kernel() const {
    auto [r, rk] = rref();
    std::vector<std::size_t> piv = r.pivot_columns();
    std::vector<char> is_piv(cols_, 0);
    for (std::size_t c : piv) is_piv[c] = 1;
    FpMatrix out(p_, cols_ - rk, cols_);
    std::size_t k = 0;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_piv[free]) continue;
        out.at(k, free) = 1;
        for (std::size_t i = 0; i < rk; ++i)
            out.at(k, piv[i]) = r.at(i, free) ? p_ - r.at(i, free) : 0;
        ++k;
    }
    out.rref_in_place();
    return out;
}

std::optional<FpMatrix> FpMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse: matrix not square");
    FpMatrix m = *this;
    FpMatrix t = identity(p_, rows_);
    std::size_t rk = m.rref_in_place(&t);
    if (rk != rows_) return std::nullopt;
    return t;
}

}  // namespace redenv
