#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bsos/polynomial.hpp"

namespace bsos {

// min f(x) over K = {x : g_j(x) >= 0}, with every g_j assumed scaled so that
// 0 <= g_j <= 1 on K and K compact.  The scaling assumption is documented and
// sample-checked (check_scaling), not provable here.
struct SemialgebraicProblem {
    std::string name;
    Polynomial objective;
    std::vector<Polynomial> generators;

    int num_vars() const { return objective.num_vars(); }
    int num_generators() const { return static_cast<int>(generators.size()); }

    void validate() const;  // throws on inconsistent dimensions or m == 0
};

// Problem file format:
//   line 1: n m
//   obj T        followed by T term lines (n integers + coefficient)
//   con T_j      followed by T_j term lines, repeated m times
// '#' starts a comment line.
SemialgebraicProblem read_problem(std::istream& in, const std::string& name = "");
SemialgebraicProblem read_problem_file(const std::string& path);
void write_problem(std::ostream& out, const SemialgebraicProblem& p);
void write_problem_file(const std::string& path, const SemialgebraicProblem& p);

// Samples points, keeps the K-feasible ones, and reports how often some
// g_j lands outside [0, 1] there.  Advisory only; the library never rescales.
struct ScalingReport {
    int feasible_samples = 0;
    int violations = 0;
    double worst_value = 0.0;   // most out-of-range g value seen
    int worst_generator = -1;
};

ScalingReport check_scaling(const SemialgebraicProblem& p, int num_samples = 1000,
                            std::uint64_t seed = 0);

}  // namespace bsos
