#include "redenv/pyramids.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace redenv {

int Pyramid::box_at(int row, int col) const {
    if (row < 0 || row >= rows() || col < 0 || col >= row_lengths[row]) return -1;
    int b = 0;
    for (int r = 0; r < row; ++r) b += row_lengths[r];
    return b + col;
}

std::vector<std::pair<int, int>> Pyramid::vertical_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int r = 0; r + 1 < rows(); ++r)
        for (int c = 0; c < row_lengths[r]; ++c) {
            int lo = box_at(r + 1, c);
            if (lo >= 0) out.push_back({box_at(r, c), lo});
        }
    return out;
}

std::vector<std::pair<int, int>> Pyramid::horizontal_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int r = 0; r < rows(); ++r)
        for (int c = 0; c + 1 < row_lengths[r]; ++c)
            out.push_back({box_at(r, c), box_at(r, c + 1)});
    return out;
}

Pyramid build_pyramid(const std::vector<int>& partition) {
    if (partition.empty()) throw std::invalid_argument("build_pyramid: empty partition");
    for (std::size_t i = 0; i < partition.size(); ++i) {
        if (partition[i] <= 0) throw std::invalid_argument("build_pyramid: parts must be positive");
        if (i && partition[i] < partition[i - 1])
            throw std::invalid_argument("build_pyramid: parts must be weakly increasing");
    }
    Pyramid P;
    P.row_lengths = partition;
    P.N = std::accumulate(partition.begin(), partition.end(), 0);
    for (int r = 0; r < P.rows(); ++r)
        for (int c = 0; c < partition[r]; ++c) {
            P.row_of.push_back(r);
            P.col_of.push_back(c);
        }
    return P;
}

std::vector<std::pair<int, int>> e_pi(const Pyramid& P) { return P.horizontal_pairs(); }

ChiForm chi_pi(const LieAlg& gl, const Pyramid& P, u64 p) {
    if (gl.N() != P.N) throw std::invalid_argument("chi_pi: rank mismatch");
    ChiForm chi(p, gl.dim());
    for (auto [i, j] : e_pi(P)) {
        // tr(e_pi e_{ji}) = 1: chi is supported on e_{j,i} with j = i + 1.
        chi.values[gl.matrix_unit_index(j, i)] = 1;
    }
    if (!chi.standard_levi(gl)) throw std::logic_error("chi_pi: not in standard Levi form");
    return chi;
}

static std::vector<std::vector<long long>> rows_of(const Pyramid& P, const FillingZ& A) {
    std::vector<std::vector<long long>> rows(P.rows());
    for (int b = 0; b < P.N; ++b) rows[P.row_of[b]].push_back(A[b]);
    return rows;
}

bool row_equivalent(const Pyramid& P, const FillingZ& A, const FillingZ& B) {
    auto ra = rows_of(P, A), rb = rows_of(P, B);
    for (int r = 0; r < P.rows(); ++r) {
        std::sort(ra[r].begin(), ra[r].end());
        std::sort(rb[r].begin(), rb[r].end());
        if (ra[r] != rb[r]) return false;
    }
    return true;
}

bool row_equivalent_fp(const Pyramid& P, const FillingFp& A, const FillingFp& B, u64 p) {
    FillingZ a(A.begin(), A.end()), b(B.begin(), B.end());
    for (auto& x : a) x %= (long long)p;
    for (auto& x : b) x %= (long long)p;
    return row_equivalent(P, a, b);
}

bool column_strict(const Pyramid& P, const FillingZ& A) {
    for (auto [up, lo] : P.vertical_pairs())
        if (!(A[up] > A[lo])) return false;
    return true;
}

bool row_standard(const Pyramid& P, const FillingZ& A) {
    for (auto [l, r] : P.horizontal_pairs())
        if (A[l] > A[r]) return false;
    return true;
}

bool column_connected(const Pyramid& P, const FillingZ& A) {
    for (auto [up, lo] : P.vertical_pairs())
        if (A[up] != A[lo] + 1) return false;
    return true;
}

bool column_connected_fp(const Pyramid& P, const FillingFp& A, u64 p) {
    for (auto [up, lo] : P.vertical_pairs())
        if (A[up] % p != (A[lo] + 1) % p) return false;
    return true;
}

FillingZ lift_column_connected(const Pyramid& P, const FillingFp& A, u64 p) {
    if (!column_connected_fp(P, A, p))
        throw std::invalid_argument("lift_column_connected: filling is not column-connected");
    FillingZ out(P.N, 0);
    long long prev_max = 0;
    bool have_prev = false;
    int max_cols = P.row_lengths.back();
    for (int c = 0; c < max_cols; ++c) {
        // Boxes of column c, top to bottom; entries must descend by exactly 1.
        std::vector<int> boxes;
        for (int r = 0; r < P.rows(); ++r) {
            int b = P.box_at(r, c);
            if (b >= 0) boxes.push_back(b);
        }
        // Anchor the top entry at its least nonnegative residue, then shift
        // the whole column by multiples of p until it clears the previous
        // column.
        long long top = (long long)(A[boxes.front()] % p);
        auto fill = [&](long long t) {
            for (std::size_t k = 0; k < boxes.size(); ++k) out[boxes[k]] = t - (long long)k;
        };
        fill(top);
        if (have_prev) {
            long long mn = top - (long long)boxes.size() + 1;
            while (mn <= prev_max) {
                top += (long long)p;
                mn += (long long)p;
            }
            fill(top);
        }
        prev_max = top;
        have_prev = true;
    }
    // Postconditions of the construction.
    FillingFp redx(P.N);
    for (int b = 0; b < P.N; ++b) redx[b] = u64(((out[b] % (long long)p) + (long long)p) % (long long)p);
    for (int b = 0; b < P.N; ++b)
        if (redx[b] != A[b] % p) throw std::logic_error("lift_column_connected: reduction mismatch");
    if (!column_connected(P, out) || !row_standard(P, out))
        throw std::logic_error("lift_column_connected: postcondition failed");
    return out;
}

std::vector<int> rs_shape(const std::vector<long long>& word) {
    std::set<long long> seen(word.begin(), word.end());
    if (seen.size() != word.size())
        throw std::invalid_argument("rs_shape: entries must be distinct");
    std::vector<std::vector<long long>> tableau;
    for (long long x : word) {
        long long cur = x;
        bool placed = false;
        for (auto& row : tableau) {
            auto it = std::upper_bound(row.begin(), row.end(), cur);
            if (it == row.end()) {
                row.push_back(cur);
                placed = true;
                break;
            }
            std::swap(cur, *it);
        }
        if (!placed) tableau.push_back({cur});
    }
    std::vector<int> shape;
    for (auto& row : tableau) shape.push_back(int(row.size()));
    std::sort(shape.rbegin(), shape.rend());
    return shape;
}

CentralizerDims centralizer_dims(const Pyramid& P, u64 p) {
    const int N = P.N;
    const auto& parts = P.row_lengths;
    CentralizerDims out;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = 0; j < parts.size(); ++j) {
            long long m = std::min(parts[i], parts[j]);
            out.gl_centralizer += m;
            if (j <= i) out.b_centralizer += m;
        }
    out.orbit_dim = (long long)N * N - out.gl_centralizer;

    // Oracle: kernels of Z -> [Z, e_pi] on gl_N and on the Borel.
    auto pairs = e_pi(P);
    auto epi = [&](int a, int b) {
        for (auto [i, j] : pairs)
            if (i == a && j == b) return u64(1);
        return u64(0);
    };
    PrimeField F(p);
    FpMatrix full(p, std::size_t(N) * N, std::size_t(N) * N);
    std::vector<std::pair<int, int>> bvars;
    for (int a = 0; a < N; ++a)
        for (int b = a; b < N; ++b) bvars.push_back({a, b});
    FpMatrix borel(p, std::size_t(N) * N, bvars.size());
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            // [Z, e]_{ij} = sum_a Z_{ia} e_{aj} - e_{ia} Z_{aj}
            for (int a = 0; a < N; ++a) {
                std::size_t row = std::size_t(i) * N + j;
                u64 c1 = epi(a, j), c2 = epi(i, a);
                if (c1) full.at(row, std::size_t(i) * N + a) = F.add(full.at(row, std::size_t(i) * N + a), c1);
                if (c2) full.at(row, std::size_t(a) * N + j) = F.sub(full.at(row, std::size_t(a) * N + j), c2);
            }
        }
    for (std::size_t v = 0; v < bvars.size(); ++v) {
        auto [a, b] = bvars[v];
        for (std::size_t row = 0; row < std::size_t(N) * N; ++row)
            borel.at(row, v) = full.at(row, std::size_t(a) * N + b);
    }
    long long oracle_full = (long long)(std::size_t(N) * N - full.rank());
    long long oracle_borel = (long long)(bvars.size() - borel.rank());
    if (oracle_full != out.gl_centralizer || oracle_borel != out.b_centralizer)
        throw std::logic_error("centralizer_dims: formula disagrees with the kernel oracle");
    if (out.b_centralizer * 2 != out.gl_centralizer + N)
        throw std::logic_error("centralizer_dims: Borel identity fails");
    if (out.orbit_dim % 2 != 0) throw std::logic_error("centralizer_dims: orbit dimension is odd");
    out.min_dim = boost::multiprecision::pow(Int(p), unsigned(out.orbit_dim / 2));
    return out;
}

bool sigma_check(const Pyramid& P, const FillingZ& Ahat) {
    const int N = P.N;
    std::set<long long> seen(Ahat.begin(), Ahat.end());
    if (int(seen.size()) != N) throw std::invalid_argument("sigma_check: entries must be distinct");
    std::vector<long long> sorted(Ahat.begin(), Ahat.end());
    std::sort(sorted.rbegin(), sorted.rend());  // A^0: strictly decreasing
    std::vector<int> winv(N);                   // w^{-1}(j): position of Ahat[j] in A^0
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
            if (sorted[k] == Ahat[j]) winv[j] = k;
    std::vector<int> sigma(N);  // sigma = w_0 w^{-1}
    for (int j = 0; j < N; ++j) sigma[j] = N - 1 - winv[j];

    bool ok = true;
    for (auto [i, j] : P.horizontal_pairs())
        if (!(sigma[i] < sigma[j])) ok = false;

    // Matrix route: Ad(sigma)(e_pi) = sum e_{sigma(i) sigma(j)} strictly upper.
    bool upper = true;
    for (auto [i, j] : e_pi(P))
        if (!(sigma[i] < sigma[j])) upper = false;
    if (ok != upper) throw std::logic_error("sigma_check: adjacency and matrix routes disagree");
    return ok;
}

FillingFp row_sorted(const Pyramid& P, const FillingFp& A, u64 p) {
    FillingFp out(P.N);
    int b = 0;
    for (int r = 0; r < P.rows(); ++r) {
        std::vector<u64> row;
        for (int c = 0; c < P.row_lengths[r]; ++c) row.push_back(A[b + c] % p);
        std::sort(row.begin(), row.end());
        for (int c = 0; c < P.row_lengths[r]; ++c) out[b + c] = row[c];
        b += P.row_lengths[r];
    }
    return out;
}

// Enumerate all row permutations of a filling and test column-connectedness.
static bool row_equiv_column_connected(const Pyramid& P, const FillingFp& A, u64 p) {
    std::vector<std::vector<u64>> rows(P.rows());
    for (int b = 0; b < P.N; ++b) rows[P.row_of[b]].push_back(A[b] % p);
    for (auto& r : rows) std::sort(r.begin(), r.end());
    // Odometer over per-row permutations.
    std::vector<std::vector<std::vector<u64>>> perms(P.rows());
    for (int r = 0; r < P.rows(); ++r) {
        auto cur = rows[r];
        do {
            perms[r].push_back(cur);
        } while (std::next_permutation(cur.begin(), cur.end()));
    }
    std::vector<std::size_t> pick(P.rows(), 0);
    while (true) {
        FillingFp cand(P.N);
        int b = 0;
        for (int r = 0; r < P.rows(); ++r)
            for (int c = 0; c < P.row_lengths[r]; ++c) cand[b++] = perms[r][pick[r]][c];
        if (column_connected_fp(P, cand, p)) return true;
        int r = 0;
        while (r < P.rows() && ++pick[r] == perms[r].size()) pick[r++] = 0;
        if (r == P.rows()) break;
    }
    return false;
}

std::vector<FillingFp> min_dim_classification(const Pyramid& P, u64 p) {
    double count = 1;
    for (int b = 0; b < P.N; ++b) count *= double(p);
    if (count > 1e6)
        throw std::invalid_argument("min_dim_classification: p^N = " + std::to_string(count) +
                                    " exceeds the enumeration budget");
    std::set<FillingFp> classes;
    FillingFp A(P.N, 0);
    while (true) {
        FillingFp canon = row_sorted(P, A, p);
        if (!classes.count(canon) && row_equiv_column_connected(P, canon, p)) classes.insert(canon);
        int b = 0;
        while (b < P.N && ++A[b] == p) A[b++] = 0;
        if (b == P.N) break;
    }
    return std::vector<FillingFp>(classes.begin(), classes.end());
}

MinimalLabelReport minimal_label_pipeline(const Pyramid& P, u64 p, const FillingFp& A, int depth) {
    MinimalLabelReport rep;
    rep.label = row_sorted(P, A, p);
    rep.r1_ok = (P.N % int(p)) != 0;
    rep.min_dim = centralizer_dims(P, p).min_dim;

    // Work with a column-connected member of the row-equivalence class.
    FillingFp cc = A;
    if (!column_connected_fp(P, cc, p)) {
        bool found = false;
        // Search the row permutations for a column-connected member.
        std::vector<std::vector<u64>> rows(P.rows());
        for (int b = 0; b < P.N; ++b) rows[P.row_of[b]].push_back(A[b] % p);
        for (auto& r : rows) std::sort(r.begin(), r.end());
        std::vector<std::vector<std::vector<u64>>> perms(P.rows());
        for (int r = 0; r < P.rows(); ++r) {
            auto cur = rows[r];
            do perms[r].push_back(cur);
            while (std::next_permutation(cur.begin(), cur.end()));
        }
        std::vector<std::size_t> pick(P.rows(), 0);
        while (!found) {
            FillingFp cand(P.N);
            int b = 0;
            for (int r = 0; r < P.rows(); ++r)
                for (int c = 0; c < P.row_lengths[r]; ++c) cand[b++] = perms[r][pick[r]][c];
            if (column_connected_fp(P, cand, p)) {
                cc = cand;
                found = true;
                break;
            }
            int r = 0;
            while (r < P.rows() && ++pick[r] == perms[r].size()) pick[r++] = 0;
            if (r == P.rows()) break;
        }
        if (!found)
            throw std::invalid_argument("minimal_label_pipeline: label is not minimal-dimensional");
    }

    rep.lift = lift_column_connected(P, cc, p);
    auto gl = make_alg(AlgKind::gl, P.N);
    ChiForm chi = chi_pi(*gl, P, p);
    WeightZ rh = rho(P.N);
    WeightQ lambda(P.N);
    for (int k = 0; k < P.N; ++k) lambda[k] = Rat(rep.lift[k] - rh[k]);

    int K = depth > 0 ? depth : default_window_depth(*gl, p);
    try {
        MatrixModule Lp = build_L_p_chi(gl, lambda, chi, K);
        rep.dim_Lp_chi = Lp.dim;
        rep.nonzero = Lp.dim > 0;
        if (rep.nonzero) {
            WeightFp lt(P.N);
            PrimeField F(p);
            for (int k = 0; k < P.N; ++k) lt[k] = F.reduce(rep.lift[k] - rh[k]);
            rep.surjection = head_surjection_check(Lp, chi, lt);
        }
    } catch (const UndecidedError& e) {
        rep.undecided = true;
        rep.diagnostics = e.what();
    }
    return rep;
}

}  // namespace redenv
