#include "redenv/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace redenv {

namespace {

std::vector<Subspace> submodule_lattice(const MatrixModule& M) {
    const u64 p = M.p();
    auto seen_key = [](const Subspace& s) {
        std::vector<u64> key{u64(s.dim())};
        for (std::size_t i = 0; i < s.basis().rows(); ++i)
            for (std::size_t j = 0; j < s.basis().cols(); ++j) key.push_back(s.basis().at(i, j));
        return key;
    };
    std::map<std::vector<u64>, std::size_t> index;
    auto add = [&](std::vector<Subspace>& pool, const Subspace& s) {
        auto k = seen_key(s);
        if (index.count(k)) return false;
        index[k] = pool.size();
        pool.push_back(s);
        return true;
    };

    std::vector<Subspace> pool;
    add(pool, Subspace::zero(p, M.dim));
    for (const auto& ws : weight_spaces(M))
        for (const auto& v : projective_vectors(ws.space)) add(pool, spin(M, {v}));

    // Close under sums.
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Subspace s = pool[i].sum(pool[j]);
            add(pool, s);
            if (pool.size() > 20000) throw std::runtime_error("oracle: submodule lattice too large");
        }
    }
    return pool;
}

}  // namespace

std::size_t count_submodules(const MatrixModule& M) { return submodule_lattice(M).size(); }

CompFactorList oracle_composition_factors(const MatrixModule& M) {
    auto I = M.chi.standard_levi(*M.g);
    LeviSubset levi = I ? *I : LeviSubset{};
    std::vector<Subspace> lattice = submodule_lattice(M);

    std::map<std::vector<u64>, CompFactor> acc;
    Subspace cur = Subspace::zero(M.p(), M.dim);
    while (cur.dim() < M.dim) {
        // Smallest lattice member strictly above cur: the step is simple
        // because any intermediate submodule would itself be in the lattice.
        const Subspace* next = nullptr;
        for (const auto& s : lattice)
            if (s.dim() > cur.dim() && s.contains(cur) && (!next || s.dim() < next->dim()))
                next = &s;
        if (!next) throw std::logic_error("oracle: chain stuck below the full module");
        SubmoduleView step = submodule_module(M, *next);
        Subspace cur_in_step = Subspace::from_vectors(
            M.p(), next->dim(),
            [&] {
                std::vector<std::vector<u64>> rows;
                for (std::size_t i = 0; i < cur.dim(); ++i)
                    rows.push_back(next->coords(cur.basis().row_vec(i)));
                return rows;
            }());
        MatrixModule factor = quotient_module(step.mod, cur_in_step).mod;
        auto hw = highest_weight_vectors(factor);
        if (hw.empty()) throw std::logic_error("oracle: simple factor without highest weight");
        WeightFp label = canonical_linkage_rep(M.g->rd(), M.p(), hw.front().weight, levi);
        auto key = M.g->rd().weight_key_fp(label, M.p());
        auto it = acc.find(key);
        if (it == acc.end())
            acc.emplace(key, CompFactor{label, 1, factor.dim});
        else {
            if (it->second.dim_simple != factor.dim)
                throw std::logic_error("oracle: same label with different dimensions");
            it->second.mult += 1;
        }
        cur = *next;
    }
    CompFactorList out;
    for (auto& [k, f] : acc) out.push_back(f);
    if (total_dim(out) != M.dim) throw std::logic_error("oracle: dimension sum mismatch");
    return out;
}

}  // namespace redenv
