// Command line driver: certified computations with baby Verma modules over
// reduced enveloping algebras of gl_N / sl_N, with JSON reports.

#include <iostream>

#include "CLI11.hpp"
#include "redenv/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"redenv: exact modular representation computations for gl_N / sl_N"};
    app.require_subcommand(1);

    redenv::TensorFiltArgs tf;
    bool as_json = false;

    auto* filt = app.add_subcommand("tensor-filt",
                                    "certify the baby Verma filtration of a tensor product");
    filt->add_option("--alg", tf.alg, "algebra, e.g. sl2 or gl3");
    filt->add_option("--p", tf.p, "odd prime")->required();
    filt->add_option("--chi", tf.chi, "chi: zero | regular-nilpotent | pyramid:... | e21=1,...");
    filt->add_option("--chi2", tf.chi2, "second chi");
    filt->add_option("--lambda", tf.lambda, "highest weight of the first factor")->required();
    filt->add_option("--mu", tf.mu, "highest weight of the second factor")->required();
    filt->add_option("--seed", tf.seed, "rng seed (reserved)");
    filt->add_flag("--json", as_json, "emit the JSON report");

    std::string suite_name;
    redenv::u64 suite_p = 5;
    std::uint64_t suite_seed = 0;
    int suite_depth = 0;
    auto* suite = app.add_subcommand("suite", "run a named acceptance scenario");
    suite->add_option("name", suite_name, "example-2-3 | pyramid-1224 | mindim-12-of-3 | thm317-N2")
        ->required();
    suite->add_option("--p", suite_p, "odd prime (used by suites that take one)");
    suite->add_option("--seed", suite_seed, "rng seed");
    suite->add_option("--depth", suite_depth, "window depth override for base-change suites");
    suite->add_flag("--json", as_json, "emit the JSON report");

    std::string partition_spec;
    redenv::u64 pyr_p = 5;
    auto* pyr = app.add_subcommand("pyramid", "certified centralizer/orbit data for a partition");
    pyr->add_option("--partition", partition_spec, "weakly increasing parts, e.g. 1,2,2,4")
        ->required();
    pyr->add_option("--p", pyr_p, "odd prime");
    pyr->add_flag("--json", as_json, "emit the JSON report");

    CLI11_PARSE(app, argc, argv);

    try {
        redenv::Json rep;
        if (filt->parsed()) {
            rep = redenv::cmd_tensor_filtration(tf);
        } else if (pyr->parsed()) {
            std::vector<int> parts;
            std::string cur;
            for (char c : partition_spec + ",") {
                if (c == ',') {
                    if (!cur.empty()) parts.push_back(std::stoi(cur));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            rep = redenv::cmd_pyramid(parts, pyr_p);
        } else {
            rep = redenv::cmd_suite(suite_name, suite_p, suite_seed, suite_depth);
        }
        if (as_json)
            std::cout << rep.dump(2) << "\n";
        else
            std::cout << redenv::render_text(rep);
        return redenv::report_certified(rep) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
