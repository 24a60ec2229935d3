#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "bsos/problem.hpp"

namespace bsos {

enum class Mode { Bsos, Lp };

struct RelaxationConfig {
    int d = 1;                      // hierarchy level
    int k = 1;                      // SOS degree bound (PSD block is s(k) x s(k))
    std::uint64_t seed = 0;
    Mode mode = Mode::Bsos;         // Lp forces k = 0
    double redundancy_tol = 1e-9;
    double min_coord = 1e-8;        // redraw threshold for sample coordinates
    std::size_t max_rows = 200000;

    void validate() const;
};

// Exponent pair (alpha, beta) stored as one concatenated 2m-vector.
using PairExponent = std::vector<int>;

// All (alpha, beta) in N^{2m} with |alpha|+|beta| <= d, graded lex order over
// the concatenated vector; the first pair is all zeros.
std::vector<PairExponent> enumerate_pairs(int m, int d);

// tau = max{deg f, 2k, d max_j deg g_j}
int compute_tau(const SemialgebraicProblem& p, int d, int k);

// L points in [-1,1]^n, coordinates redrawn while |c| < min_coord.
Eigen::MatrixXd sample_points(int n, std::int64_t L, std::uint64_t seed, double min_coord);

// h_{alpha beta}(z) = prod_j g_j(z)^{alpha_j} (1 - g_j(z))^{beta_j},
// evaluated from one g_j(z) pass (no symbolic expansion).
double eval_h(const SemialgebraicProblem& p, const PairExponent& pair, const Eigen::VectorXd& z);

// Assembled point-evaluation relaxation.
struct SdpInstance {
    int n = 0, m = 0;
    int d = 0, k = 0, tau = 0;
    Mode mode = Mode::Bsos;
    Eigen::MatrixXd points;                          // L' x n (kept rows)
    Eigen::MatrixXd basis_vectors;                   // s(k) x L', empty in LP mode
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> h_matrix;  // L' x P
    std::vector<PairExponent> pair_index;            // P pairs
    Eigen::VectorXd rhs;                             // f(x^(p)) on kept rows
    std::vector<int> kept_rows;                      // indices into the sampled order
    // set when some dropped row was dependent on the kept ones on the left
    // side but not once the rhs is included: the equality system is
    // unsolvable and the relaxation is infeasible
    bool rhs_inconsistent = false;

    std::int64_t num_rows() const { return h_matrix.rows(); }
    std::int64_t num_pairs() const { return h_matrix.cols(); }
    std::int64_t psd_dim() const { return basis_vectors.rows(); }
};

struct InstanceTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sampling + evaluation only; every sampled row kept.
SdpInstance assemble_raw(const SemialgebraicProblem& p, const RelaxationConfig& cfg);

// assemble_raw followed by remove_redundant.
SdpInstance assemble(const SemialgebraicProblem& p, const RelaxationConfig& cfg);

// Keeps a maximal independent subset of the stacked rows
// [1 | H_p | svec(v_p v_p') | b_p] (rank-revealing pivoted orthogonalization,
// tolerance relative to the largest row).  Including b_p in the stack keeps
// rows that contradict the kept ones, so an unsolvable equality system stays
// unsolvable and is flagged via rhs_inconsistent.
SdpInstance remove_redundant(const SdpInstance& inst, double tol = 1e-9);

}  // namespace bsos
