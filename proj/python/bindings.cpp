// Python bindings for the redenv core: baby Verma modules, certified tensor
// filtrations, composition factors, the pyramid/tableau layer and the
// characteristic-zero base-change pipeline. Structured results are returned
// as plain Python objects; full reports come back as JSON strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "redenv/charzero.hpp"
#include "redenv/oracle.hpp"
#include "redenv/pyramids.hpp"
#include "redenv/report.hpp"
#include "redenv/verma.hpp"

namespace py = pybind11;
using namespace redenv;

namespace {

std::shared_ptr<const LieAlg> alg_of(const std::string& spec) {
    auto [kind, N] = parse_alg(spec);
    return make_alg(kind, N);
}

WeightQ parse_weight_q(const LieAlg& g, const std::string& spec) {
    WeightQ out;
    std::string cur;
    auto flush = [&] {
        auto slash = cur.find('/');
        if (slash == std::string::npos)
            out.push_back(Rat(std::stoll(cur)));
        else
            out.push_back(Rat(std::stoll(cur.substr(0, slash)), std::stoll(cur.substr(slash + 1))));
        cur.clear();
    };
    for (char c : spec) {
        if (c == ',')
            flush();
        else
            cur += c;
    }
    flush();
    if (int(out.size()) == 1 && g.N() == 2) out.push_back(Rat(0));
    if (int(out.size()) != g.N()) throw std::invalid_argument("weight needs N coordinates");
    return out;
}

py::list factors_to_py(const RootData& rd, u64 p, const CompFactorList& l) {
    py::list out;
    for (const auto& f : l) {
        py::dict e;
        py::list label;
        for (u64 v : rd.weight_key_fp(f.label, p)) label.append(v);
        e["label"] = label;
        e["multiplicity"] = f.mult;
        e["dim"] = f.dim_simple;
        out.append(e);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact computations with baby Verma modules over reduced enveloping algebras";
    m.attr("__version__") = kVersion;

    m.def("rref", [](u64 p, const std::vector<std::vector<u64>>& rows) {
        auto [r, rank] = FpMatrix::from_rows(p, rows).rref();
        std::vector<std::vector<u64>> out;
        for (std::size_t i = 0; i < r.rows(); ++i) out.push_back(r.row_vec(i));
        return py::make_tuple(out, rank);
    }, py::arg("p"), py::arg("rows"), "Reduced row echelon form and rank over F_p");

    m.def("kernel", [](u64 p, const std::vector<std::vector<u64>>& rows) {
        FpMatrix k = FpMatrix::from_rows(p, rows).kernel();
        std::vector<std::vector<u64>> out;
        for (std::size_t i = 0; i < k.rows(); ++i) out.push_back(k.row_vec(i));
        return out;
    }, py::arg("p"), py::arg("rows"), "Basis of the right null space over F_p");

    m.def("rho", &rho, py::arg("N"));

    m.def("baby_verma_dim", [](const std::string& alg, u64 p, const std::string& chi,
                               const std::string& lambda) {
        auto g = alg_of(alg);
        BabyVerma Z = build_baby_verma(g, parse_chi(*g, p, chi), parse_weight(*g, p, lambda));
        return Z.mod.dim;
    }, py::arg("alg"), py::arg("p"), py::arg("chi"), py::arg("lam"));

    m.def("composition_factors", [](const std::string& alg, u64 p, const std::string& chi,
                                    const std::string& lambda) {
        auto g = alg_of(alg);
        BabyVerma Z = build_baby_verma(g, parse_chi(*g, p, chi), parse_weight(*g, p, lambda));
        return factors_to_py(g->rd(), p, composition_factors(Z.mod));
    }, py::arg("alg"), py::arg("p"), py::arg("chi"), py::arg("lam"),
       "Composition factors of the baby Verma Z_chi(lambda)");

    m.def("tensor_composition_factors", [](const std::string& alg, u64 p, const std::string& chi,
                                           const std::string& chi2, const std::string& lambda,
                                           const std::string& mu, bool use_oracle) {
        auto g = alg_of(alg);
        BabyVerma Zl = build_baby_verma(g, parse_chi(*g, p, chi), parse_weight(*g, p, lambda));
        BabyVerma Zm = build_baby_verma(g, parse_chi(*g, p, chi2), parse_weight(*g, p, mu));
        MatrixModule T = tensor(Zl.mod, Zm.mod);
        return factors_to_py(g->rd(), p,
                             use_oracle ? oracle_composition_factors(T) : composition_factors(T));
    }, py::arg("alg"), py::arg("p"), py::arg("chi"), py::arg("chi2"), py::arg("lam"),
       py::arg("mu"), py::arg("use_oracle") = false);

    m.def("tensor_filtration", [](const std::string& alg, u64 p, const std::string& chi,
                                  const std::string& chi2, const std::string& lambda,
                                  const std::string& mu) {
        TensorFiltArgs args;
        args.alg = alg;
        args.p = p;
        args.chi = chi;
        args.chi2 = chi2;
        args.lambda = lambda;
        args.mu = mu;
        return cmd_tensor_filtration(args).dump();
    }, py::arg("alg"), py::arg("p"), py::arg("chi"), py::arg("chi2"), py::arg("lam"),
       py::arg("mu"), "Certified baby Verma filtration report (JSON string)");

    m.def("run_suite", [](const std::string& name, u64 p, std::uint64_t seed) {
        return cmd_suite(name, p, seed).dump();
    }, py::arg("name"), py::arg("p") = 5, py::arg("seed") = 0,
       "Run a named acceptance scenario, returning the JSON report");

    m.def("centralizer_dims", [](const std::vector<int>& partition, u64 p) {
        CentralizerDims cd = centralizer_dims(build_pyramid(partition), p);
        py::dict out;
        out["gl_centralizer"] = cd.gl_centralizer;
        out["b_centralizer"] = cd.b_centralizer;
        out["orbit_dim"] = cd.orbit_dim;
        out["min_dim"] = py::cast(cd.min_dim.str());
        return out;
    }, py::arg("partition"), py::arg("p"),
       "Centralizer/orbit dimensions of e_pi, certified against the kernel oracle");

    m.def("lift_column_connected", [](const std::vector<int>& partition,
                                      const std::vector<u64>& filling, u64 p) {
        return lift_column_connected(build_pyramid(partition), filling, p);
    }, py::arg("partition"), py::arg("filling"), py::arg("p"));

    m.def("rs_shape", &rs_shape, py::arg("word"));

    m.def("sigma_check", [](const std::vector<int>& partition, const std::vector<long long>& lift) {
        return sigma_check(build_pyramid(partition), lift);
    }, py::arg("partition"), py::arg("lift"));

    m.def("min_dim_classification", [](const std::vector<int>& partition, u64 p) {
        return min_dim_classification(build_pyramid(partition), p);
    }, py::arg("partition"), py::arg("p"),
       "Row-equivalence classes of fillings giving minimal-dimensional simples");

    m.def("minimal_label_pipeline", [](const std::vector<int>& partition, u64 p,
                            const std::vector<u64>& filling) {
        MinimalLabelReport r = minimal_label_pipeline(build_pyramid(partition), p, filling);
        py::dict out;
        out["label"] = r.label;
        out["lift"] = r.lift;
        out["nonzero"] = r.nonzero;
        out["surjection"] = r.surjection;
        out["dim"] = r.dim_Lp_chi;
        out["min_dim"] = py::cast(r.min_dim.str());
        out["undecided"] = r.undecided;
        out["diagnostics"] = r.diagnostics;
        out["annihilator_claims"] = r.annihilator_claims;
        return out;
    }, py::arg("partition"), py::arg("p"), py::arg("filling"),
       "Base-change pipeline for a minimal label: lift, L_p^chi, surjection");

    m.def("dim_L_p_chi", [](const std::string& alg, u64 p, const std::string& lambda_q,
                            const std::string& chi, int depth) {
        auto g = alg_of(alg);
        ChiForm c = parse_chi(*g, p, chi);
        int K = depth > 0 ? depth : default_window_depth(*g, p);
        return build_L_p_chi(g, parse_weight_q(*g, lambda_q), c, K).dim;
    }, py::arg("alg"), py::arg("p"), py::arg("lambda_q"), py::arg("chi"), py::arg("depth") = 0,
       "dim of L_p^chi(lambda) for a rational weight like \"1/2\" or \"3,-1/2,0\"");

    m.def("m_p_chi_matches_baby_verma", [](const std::string& alg, u64 p,
                                           const std::string& lambda_q, const std::string& chi,
                                           int depth) {
        auto g = alg_of(alg);
        ChiForm c = parse_chi(*g, p, chi);
        int K = depth > 0 ? depth : default_window_depth(*g, p);
        WeightQ lam = parse_weight_q(*g, lambda_q);
        MatrixModule Q = build_M_p_chi(g, lam, c, K);
        auto lt = weight_mod_p(lam, p);
        if (!lt) throw std::domain_error("p divides a denominator of lambda");
        BabyVerma Z = build_baby_verma(g, c, *lt);
        auto psi = find_isomorphism(Q, Z.mod);
        return psi.has_value() && is_equivariant(Q, Z.mod, *psi);
    }, py::arg("alg"), py::arg("p"), py::arg("lambda_q"), py::arg("chi"), py::arg("depth") = 0,
       "Certify M_p^chi(lambda) isomorphic to Z_chi(lambda~) by explicit intertwiner");

    m.def("gl_sl_compare", [](int N, const std::string& lambda_q, const std::string& chi, u64 p,
                              int depth) {
        auto gl = make_alg(AlgKind::gl, N);
        ChiForm c = parse_chi(*gl, p, chi);
        int K = depth > 0 ? depth : default_window_depth(*gl, p);
        return gl_sl_compare(N, parse_weight_q(*gl, lambda_q), c, p, K);
    }, py::arg("N"), py::arg("lambda_q"), py::arg("chi"), py::arg("p"), py::arg("depth") = 0);
}
