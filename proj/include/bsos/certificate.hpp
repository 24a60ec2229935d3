#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "bsos/problem.hpp"
#include "bsos/relaxation.hpp"
#include "bsos/solver.hpp"

namespace bsos {

// Moment vector y_alpha = sum_p theta_p (x^(p))^alpha over N^n_{2s}, indexed
// by monomial_basis(n, 2s) in graded lex order.
struct MomentData {
    int num_vars = 0;
    int order = 0;                 // 2s
    MonomialBasis basis;           // exponents of order <= 2s
    Eigen::VectorXd y;
    Eigen::MatrixXd source_points; // kept sample points, rows
    Eigen::VectorXd theta;
};

MomentData build_moment_vector(const Eigen::VectorXd& theta, const Eigen::MatrixXd& points,
                               int order);

// M_l(y)(a, b) = y_{a+b}, rows/columns indexed by monomial_basis(n, l).
Eigen::MatrixXd moment_matrix(const MomentData& y, int l);

// M_l(g y)(a, b) = sum_gamma g_gamma y_{a+b+gamma}.
Eigen::MatrixXd localizing_matrix(const MomentData& y, const Polynomial& g, int l);

// Eigenvalues clipped at zero; rank = count of eigenvalues >= lambda_max/ratio.
// The ratio test with 1e4 reproduces the rank-one declaration used for the
// benchmark tables.
int numerical_rank(const Eigen::MatrixXd& m, double ratio = 1e4);

struct CertificateReport {
    bool available = false;        // dual multipliers were present
    int s = 0;                     // moment order: smallest s with 2s >= max deg
    int r = 0;                     // max_j ceil(deg g_j / 2)
    Eigen::MatrixXd moment_mat;            // M_s(y*)
    std::vector<Eigen::MatrixXd> localizing;  // M_{s-r}(g_j y*)
    int rank_ms = 0;
    int rank_ms_minus_r = 0;
    bool moment_psd = false;
    std::vector<bool> localizing_psd;
    bool rank_one = false;
    bool flat_extension = false;
    std::optional<Eigen::VectorXd> candidate;   // set in the rank-one case
    bool candidate_feasible = false;
    double candidate_value = 0.0;
};

// Verification of the solved relaxation: builds y* from theta, checks the
// rank-one and flat-extension conditions, extracts the minimizer from the
// degree-one moments when rank one.
CertificateReport verify(const SemialgebraicProblem& problem, const SolveResult& result,
                         const SdpInstance& inst, double feas_tol = 1e-6, double rank_ratio = 1e4);

}  // namespace bsos
