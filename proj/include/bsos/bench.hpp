#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bsos/certificate.hpp"
#include "bsos/problem.hpp"
#include "bsos/relaxation.hpp"
#include "bsos/solver.hpp"

namespace bsos {

// Catalog of the built-in benchmark problems.  Every entry carries its
// nonnegativity bounds as extra generators g_{m+i} = x_i; the original
// constraints bound each variable by 1 on the feasible set, so the bound
// generators satisfy the [0,1] scaling assumption.
std::vector<std::string> builtin_names();
SemialgebraicProblem builtin(const std::string& name);

enum class GeneratorFamily { QuadraticSimplex, RandomBall };

struct GeneratorSpec {
    GeneratorFamily family = GeneratorFamily::QuadraticSimplex;
    int n = 10;
    int r = 2;        // negative-eigenvalue count (QuadraticSimplex)
    int degree = 2;   // objective degree in {2, 4} (RandomBall)
    std::uint64_t seed = 0;
};

// QuadraticSimplex: x'Ax over the simplex, A with exactly r negative
// eigenvalues.  RandomBall: random polynomial of the given degree over the
// unit ball intersected with the positive orthant.
SemialgebraicProblem generate(const GeneratorSpec& spec);

struct RunRecord {
    std::string problem_name;
    int n = 0, m = 0;
    int d = 0, k = 0;
    Mode mode = Mode::Bsos;
    std::optional<double> bound;          // present iff Optimal / MaxIter
    SolveStatus status = SolveStatus::NumericalFailure;
    double wall_time_seconds = 0.0;
    int iterations = 0;
    std::optional<int> rank_ms;
    bool certified = false;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double gap = 0.0;

    std::string to_json() const;
    static RunRecord from_json(const std::string& text);
};

struct RunConfig {
    int d = 1;
    int k = 1;
    Mode mode = Mode::Bsos;
    std::uint64_t seed = 0;
    bool certify = false;
    SolverOptions solver;
};

RunRecord run(const SemialgebraicProblem& problem, const RunConfig& cfg);

// One run per d in [1, d_max]; per-run failures are recorded, never thrown.
std::vector<RunRecord> sweep(const SemialgebraicProblem& problem, int d_max, RunConfig cfg);

std::string format_table(const std::vector<RunRecord>& records);

}  // namespace bsos
