#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bsos/bench.hpp"

namespace {

int status_exit_code(bsos::SolveStatus s) {
    switch (s) {
        case bsos::SolveStatus::Optimal: return 0;
        case bsos::SolveStatus::Infeasible: return 2;
        case bsos::SolveStatus::NumericalFailure: return 3;
        case bsos::SolveStatus::MaxIter: return 4;
        case bsos::SolveStatus::Unbounded: return 5;
    }
    return 3;
}

struct SolveArgs {
    std::string problem_file;
    std::string builtin_name;
    int d = 1;
    int k = 1;
    std::string mode = "bsos";
    std::uint64_t seed = 0;
    double tol = 1e-8;
    int max_iter = 100;
    bool certify = false;
    std::string output = "table";
    int d_max = 1;
};

bsos::SemialgebraicProblem load(const SolveArgs& a) {
    if (!a.problem_file.empty()) return bsos::read_problem_file(a.problem_file);
    return bsos::builtin(a.builtin_name);
}

bsos::RunConfig to_config(const SolveArgs& a) {
    bsos::RunConfig cfg;
    cfg.d = a.d;
    cfg.k = a.k;
    cfg.mode = a.mode == "lp" ? bsos::Mode::Lp : bsos::Mode::Bsos;
    cfg.seed = a.seed;
    cfg.certify = a.certify;
    cfg.solver.tol_gap = cfg.solver.tol_feas = a.tol;
    cfg.solver.max_iter = a.max_iter;
    return cfg;
}

void add_common(CLI::App* cmd, SolveArgs& a) {
    auto* file = cmd->add_option("--problem", a.problem_file, "problem file");
    auto* bname = cmd->add_option("--builtin", a.builtin_name, "built-in instance name");
    file->excludes(bname);
    cmd->add_option("--d", a.d, "hierarchy level")->check(CLI::PositiveNumber);
    cmd->add_option("--k", a.k, "SOS degree bound")->check(CLI::NonNegativeNumber);
    cmd->add_option("--mode", a.mode, "bsos|lp")->check(CLI::IsMember({"bsos", "lp"}));
    cmd->add_option("--seed", a.seed, "sample-point seed");
    cmd->add_option("--tol", a.tol, "solver tolerance");
    cmd->add_option("--max-iter", a.max_iter, "iteration cap");
    cmd->add_flag("--certify", a.certify, "run the moment-matrix verification");
    cmd->add_option("--output", a.output, "table|json")->check(CLI::IsMember({"table", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded-degree SOS relaxations for polynomial optimization"};
    app.require_subcommand(1);

    SolveArgs sa, wa, ga;
    std::string gen_family = "qn", gen_out;
    int gen_n = 10, gen_r = 2, gen_degree = 2;
    std::uint64_t gen_seed = 0;

    auto* solve_cmd = app.add_subcommand("solve", "solve one relaxation");
    add_common(solve_cmd, sa);

    auto* sweep_cmd = app.add_subcommand("sweep", "solve for d = 1..d-max");
    add_common(sweep_cmd, wa);
    sweep_cmd->add_option("--d-max", wa.d_max, "largest hierarchy level")->check(CLI::PositiveNumber);

    auto* gen_cmd = app.add_subcommand("generate", "write a random instance to a problem file");
    gen_cmd->add_option("--family", gen_family, "qn|hn")->check(CLI::IsMember({"qn", "hn"}));
    gen_cmd->add_option("--n", gen_n, "variables")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--r", gen_r, "negative eigenvalues (qn)");
    gen_cmd->add_option("--degree", gen_degree, "objective degree (hn)")->check(CLI::IsMember({2, 4}));
    gen_cmd->add_option("--seed", gen_seed, "generator seed")->required();
    gen_cmd->add_option("--out", gen_out, "output problem file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed()) {
            bsos::GeneratorSpec spec;
            spec.family = gen_family == "hn" ? bsos::GeneratorFamily::RandomBall
                                             : bsos::GeneratorFamily::QuadraticSimplex;
            spec.n = gen_n;
            spec.r = gen_r;
            spec.degree = gen_degree;
            spec.seed = gen_seed;
            const auto prob = bsos::generate(spec);
            bsos::write_problem_file(gen_out, prob);
            std::cout << "wrote " << prob.name << " (n=" << prob.num_vars()
                      << ", m=" << prob.num_generators() << ") to " << gen_out << "\n";
            return 0;
        }

        SolveArgs& a = solve_cmd->parsed() ? sa : wa;
        if (a.problem_file.empty() && a.builtin_name.empty())
            throw std::invalid_argument("need --problem or --builtin");
        const auto prob = load(a);
        const auto cfg = to_config(a);

        if (solve_cmd->parsed()) {
            bsos::RunConfig one = cfg;
            const auto rec = bsos::run(prob, one);
            if (a.output == "json")
                std::cout << rec.to_json() << "\n";
            else
                std::cout << bsos::format_table({rec});
            return status_exit_code(rec.status);
        }

        const auto recs = bsos::sweep(prob, a.d_max, cfg);
        if (a.output == "json")
            for (const auto& r : recs) std::cout << r.to_json() << "\n";
        else
            std::cout << bsos::format_table(recs);
        return 0;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
