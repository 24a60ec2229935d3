#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "bsos/relaxation.hpp"

namespace bsos {

struct SolverOptions {
    double tol_gap = 1e-8;
    double tol_feas = 1e-8;
    int max_iter = 100;
    double step_fraction = 0.98;       // fraction of the step to the cone boundary
    double infeasibility_ratio = 1e8;  // iterate blow-up threshold
    bool verbose = false;

    void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, MaxIter, NumericalFailure };

const char* to_string(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::NumericalFailure;
    double bound = 0.0;                 // optimal t (valid for Optimal / MaxIter)
    Eigen::VectorXd lambda;             // nonnegative multipliers, original scaling
    Eigen::MatrixXd q_matrix;           // Gram matrix, empty in LP mode
    Eigen::VectorXd theta;              // equality multipliers on kept rows
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double gap = 0.0;
    int iterations = 0;
    std::string note;

    bool has_bound() const {
        return status == SolveStatus::Optimal || status == SolveStatus::MaxIter;
    }
};

// Infeasible path-following Mehrotra predictor-corrector with Nesterov-Todd
// scaling on the PSD block.  The Schur complement uses the rank-one identity
// S_pq = <v_p, W v_q>^2, so no constraint matrix v_p v_p' is ever formed.
SolveResult solve(const SdpInstance& inst, const SolverOptions& opts = {});

// Same iteration without the PSD block; requires mode == Lp.
SolveResult solve_lp(const SdpInstance& inst, const SolverOptions& opts = {});

using RowMajorMatrixXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct SchurSystem {
    Eigen::MatrixXd s;          // L' x L' symmetric
    Eigen::VectorXd free_col;   // border column for the free variable
};

struct NonSpdScaling : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// S = H diag(D) H' + [ <v_p, W v_q>^2 ]_pq, with the free-variable border
// returned for bordered elimination.  W must be symmetric positive definite
// (NonSpdScaling otherwise); pass W of size 0 for the LP case.
SchurSystem schur_assemble(const Eigen::MatrixXd& w_scaling, const Eigen::MatrixXd& basis_vectors,
                           const Eigen::VectorXd& d_weights, const RowMajorMatrixXd& h_matrix,
                           const Eigen::VectorXd& free_col);

// From-scratch KKT residuals on the original instance data; independent of
// the solver internals.
struct KktReport {
    double primal_residual = 0.0;   // max_p |b_p - t - (H lam)_p - v_p' Q v_p|
    double lambda_min = 0.0;        // min component of lambda
    double dual_slack_min = 0.0;    // min component of H' theta
    double dual_psd_min_eig = 0.0;  // min eigenvalue of sum theta_p v_p v_p'
    double theta_sum_error = 0.0;   // |sum theta - 1|
    double duality_gap = 0.0;       // |b' theta - t|
};

KktReport kkt_check(const SdpInstance& inst, const SolveResult& result);

}  // namespace bsos
