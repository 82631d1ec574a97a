#include "redenv/subspace.hpp"

#include <stdexcept>

namespace redenv {

Subspace Subspace::from_rows(const FpMatrix& rows) {
    Subspace s(rows.p(), rows.cols());
    FpMatrix m = rows;
    std::size_t rk = m.rref_in_place();
    FpMatrix b(rows.p(), rk, rows.cols());
    for (std::size_t i = 0; i < rk; ++i)
        for (std::size_t j = 0; j < rows.cols(); ++j) b.at(i, j) = m.at(i, j);
    s.basis_ = b;
    return s;
}

Subspace Subspace::from_vectors(u64 p, std::size_t ambient,
                                const std::vector<std::vector<u64>>& vecs) {
    if (vecs.empty()) return Subspace(p, ambient);
    return from_rows(FpMatrix::from_rows(p, vecs));
}

std::vector<u64> Subspace::reduce(const std::vector<u64>& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("Subspace::reduce: bad length");
    const u64 p = basis_.p();
    std::vector<u64> w = v;
    for (auto& x : w) x %= p;
    auto piv = basis_.pivot_columns();
    for (std::size_t i = 0; i < piv.size(); ++i) {
        u64 f = w[piv[i]];
        if (!f) continue;
        u64 fneg = p - f;
        const u64* r = basis_.row(i);
        for (std::size_t j = piv[i]; j < ambient_; ++j) w[j] = (w[j] + fneg * r[j]) % p;
    }
    return w;
}

bool Subspace::contains(const std::vector<u64>& v) const {
    auto w = reduce(v);
    for (u64 x : w)
        if (x) return false;
    return true;
}

bool Subspace::contains(const Subspace& o) const {
    if (o.ambient_ != ambient_) return false;
    for (std::size_t i = 0; i < o.dim(); ++i)
        if (!contains(o.basis_.row_vec(i))) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& o) const {
    if (o.ambient_ != ambient_ || o.p() != p())
        throw std::invalid_argument("Subspace::sum: ambient mismatch");
    FpMatrix stacked(p(), dim() + o.dim(), ambient_);
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < ambient_; ++j) stacked.at(i, j) = basis_.at(i, j);
    for (std::size_t i = 0; i < o.dim(); ++i)
        for (std::size_t j = 0; j < ambient_; ++j) stacked.at(dim() + i, j) = o.basis_.at(i, j);
    return from_rows(stacked);
}

// Zassenhaus: rref of [A|A; B|0]; rows with zero left half carry the
// intersection basis in the right half.
Subspace Subspace::intersect(const Subspace& o) const {
    if (o.ambient_ != ambient_ || o.p() != p())
        throw std::invalid_argument("Subspace::intersect: ambient mismatch");
    const std::size_t n = ambient_;
    FpMatrix z(p(), dim() + o.dim(), 2 * n);
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            z.at(i, j) = basis_.at(i, j);
            z.at(i, n + j) = basis_.at(i, j);
        }
    for (std::size_t i = 0; i < o.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) z.at(dim() + i, j) = o.basis_.at(i, j);
    z.rref_in_place();
    std::vector<std::vector<u64>> rows;
    for (std::size_t i = 0; i < z.rows(); ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < n && left_zero; ++j)
            if (z.at(i, j)) left_zero = false;
        if (!left_zero) continue;
        std::vector<u64> r(n);
        bool nonzero = false;
        for (std::size_t j = 0; j < n; ++j) {
            r[j] = z.at(i, n + j);
            nonzero |= r[j] != 0;
        }
        if (nonzero) rows.push_back(std::move(r));
    }
    return from_vectors(p(), n, rows);
}

std::vector<u64> Subspace::coords(const std::vector<u64>& v) const {
    auto piv = basis_.pivot_columns();
    std::vector<u64> c(dim());
    std::vector<u64> w = v;
    const u64 p = basis_.p();
    for (auto& x : w) x %= p;
    for (std::size_t i = 0; i < piv.size(); ++i) {
        c[i] = w[piv[i]];
        if (!c[i]) continue;
        u64 fneg = p - c[i];
        const u64* r = basis_.row(i);
        for (std::size_t j = piv[i]; j < ambient_; ++j) w[j] = (w[j] + fneg * r[j]) % p;
    }
    for (u64 x : w)
        if (x) throw std::invalid_argument("Subspace::coords: vector not a member");
    return c;
}

std::vector<std::vector<u64>> projective_vectors(const Subspace& s, double budget) {
    const u64 p = s.p();
    const std::size_t d = s.dim();
    double count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= double(p);
    if (count > budget) throw std::runtime_error("projective_vectors: space too large to enumerate");
    std::vector<std::vector<u64>> out;
    std::vector<u64> c(d, 0);
    for (std::size_t lead = 0; lead < d; ++lead) {
        std::fill(c.begin(), c.end(), 0);
        c[lead] = 1;
        std::size_t tail = d - lead - 1;
        std::vector<u64> t(tail, 0);
        while (true) {
            for (std::size_t i = 0; i < tail; ++i) c[lead + 1 + i] = t[i];
            std::vector<u64> v(s.ambient(), 0);
            for (std::size_t j = 0; j < d; ++j) {
                if (!c[j]) continue;
                const u64* row = s.basis().row(j);
                for (std::size_t k = 0; k < v.size(); ++k) v[k] = (v[k] + c[j] * row[k]) % p;
            }
            out.push_back(std::move(v));
            std::size_t i = 0;
            while (i < tail && ++t[i] == p) t[i++] = 0;
            if (i == tail) break;
        }
    }
    return out;
}

QuotientBasis::QuotientBasis(const Subspace& sub, const Subspace& total)
    : den_(sub), reps_(sub.p(), 0, sub.ambient()) {
    if (sub.ambient() != total.ambient())
        throw std::invalid_argument("QuotientBasis: ambient mismatch");
    if (!total.contains(sub)) throw std::invalid_argument("QuotientBasis: S not a subspace of T");
    std::vector<std::vector<u64>> rows;
    for (std::size_t i = 0; i < total.dim(); ++i) {
        auto r = sub.reduce(total.basis().row_vec(i));
        bool nonzero = false;
        for (u64 x : r) nonzero |= x != 0;
        if (nonzero) rows.push_back(std::move(r));
    }
    Subspace span = Subspace::from_vectors(sub.p(), sub.ambient(), rows);
    reps_ = span.basis();
}

std::vector<u64> QuotientBasis::coords(const std::vector<u64>& v) const {
    std::vector<u64> w = den_.reduce(v);
    const u64 p = den_.p();
    std::vector<u64> c(reps_.rows(), 0);
    std::vector<std::size_t> piv = reps_.pivot_columns();
    for (std::size_t i = 0; i < piv.size(); ++i) {
        c[i] = w[piv[i]];
        if (!c[i]) continue;
        u64 fneg = p - c[i];
        const u64* r = reps_.row(i);
        for (std::size_t j = piv[i]; j < w.size(); ++j) w[j] = (w[j] + fneg * r[j]) % p;
    }
    for (u64 x : w)
        if (x) throw std::invalid_argument("QuotientBasis::coords: vector not in T + S");
    return c;
}

std::vector<u64> QuotientBasis::lift(const std::vector<u64>& coords) const {
    if (coords.size() != reps_.rows()) throw std::invalid_argument("QuotientBasis::lift: bad length");
    const u64 p = den_.p();
    std::vector<u64> v(den_.ambient(), 0);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        u64 c = coords[i] % p;
        if (!c) continue;
        const u64* r = reps_.row(i);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = (v[j] + c * r[j]) % p;
    }
    return v;
}

}  // namespace redenv
