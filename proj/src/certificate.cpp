#include "bsos/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace bsos {

namespace {

// exponent -> position in the graded-lex basis
std::map<std::vector<int>, int> index_map(const MonomialBasis& b) {
    std::map<std::vector<int>, int> idx;
    for (std::size_t i = 0; i < b.exponents.size(); ++i)
        idx.emplace(b.exponents[i], static_cast<int>(i));
    return idx;
}

}  // namespace

MomentData build_moment_vector(const Eigen::VectorXd& theta, const Eigen::MatrixXd& points,
                               int order) {
    if (theta.size() != points.rows())
        throw std::invalid_argument("build_moment_vector: |theta| != |points|");
    MomentData md;
    md.num_vars = static_cast<int>(points.cols());
    md.order = order;
    md.basis = monomial_basis(md.num_vars, order);
    md.source_points = points;
    md.theta = theta;
    md.y.setZero(static_cast<Eigen::Index>(md.basis.size()));
    for (Eigen::Index p = 0; p < points.rows(); ++p) {
        const Eigen::VectorXd z = points.row(p).transpose();
        md.y += theta[p] * eval_monomial_vector(md.basis, z);
    }
    return md;
}

Eigen::MatrixXd moment_matrix(const MomentData& y, int l) {
    if (2 * l > y.order) throw std::out_of_range("moment_matrix: 2l exceeds moment order");
    const MonomialBasis rows = monomial_basis(y.num_vars, l);
    const auto idx = index_map(y.basis);
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(n, n);
    std::vector<int> sum(y.num_vars);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            for (int v = 0; v < y.num_vars; ++v)
                sum[v] = rows.exponents[i][v] + rows.exponents[j][v];
            const double val = y.y[idx.at(sum)];
            m(i, j) = m(j, i) = val;
        }
    return m;
}

Eigen::MatrixXd localizing_matrix(const MomentData& y, const Polynomial& g, int l) {
    if (2 * l + g.degree() > y.order)
        throw std::out_of_range("localizing_matrix: 2l + deg g exceeds moment order");
    const MonomialBasis rows = monomial_basis(y.num_vars, l);
    const auto idx = index_map(y.basis);
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(n, n);
    std::vector<int> sum(y.num_vars);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            double val = 0.0;
            for (const auto& term : g.terms()) {
                for (int v = 0; v < y.num_vars; ++v)
                    sum[v] = rows.exponents[i][v] + rows.exponents[j][v] + term.exp[v];
                val += term.coeff * y.y[idx.at(sum)];
            }
            m(i, j) = m(j, i) = val;
        }
    return m;
}

int numerical_rank(const Eigen::MatrixXd& m, double ratio) {
    if (m.size() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    const double top = ev.maxCoeff();
    if (top <= 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev[i] >= top / ratio) ++r;
    return r;
}

CertificateReport verify(const SemialgebraicProblem& problem, const SolveResult& result,
                         const SdpInstance& inst, double feas_tol, double rank_ratio) {
    CertificateReport rep;
    if (result.status != SolveStatus::Optimal || result.theta.size() != inst.num_rows())
        return rep;  // available stays false
    rep.available = true;

    int maxdeg = problem.objective.degree();
    int r = 0;
    for (const auto& g : problem.generators) {
        maxdeg = std::max(maxdeg, g.degree());
        r = std::max(r, (g.degree() + 1) / 2);
    }
    rep.s = (maxdeg + 1) / 2;
    rep.r = r;

    const MomentData md = build_moment_vector(result.theta, inst.points, 2 * rep.s);
    rep.moment_mat = moment_matrix(md, rep.s);
    rep.rank_ms = numerical_rank(rep.moment_mat, rank_ratio);
    const Eigen::MatrixXd ms_minus_r = moment_matrix(md, rep.s - rep.r);
    rep.rank_ms_minus_r = numerical_rank(ms_minus_r, rank_ratio);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rep.moment_mat, Eigen::EigenvaluesOnly);
    const double trace = rep.moment_mat.trace();
    rep.moment_psd = es.eigenvalues().minCoeff() >= -feas_tol * (1.0 + std::abs(trace));

    bool all_loc_psd = true;
    for (const auto& g : problem.generators) {
        const Eigen::MatrixXd loc = localizing_matrix(md, g, rep.s - rep.r);
        rep.localizing.push_back(loc);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> le(loc, Eigen::EigenvaluesOnly);
        const bool psd = le.eigenvalues().minCoeff() >= -feas_tol * (1.0 + std::abs(loc.trace()));
        rep.localizing_psd.push_back(psd);
        all_loc_psd = all_loc_psd && psd;
    }
    rep.flat_extension = rep.moment_psd && all_loc_psd && rep.rank_ms == rep.rank_ms_minus_r;

    if (rep.rank_ms == 1) {
        rep.rank_one = true;
        // degree-one moments sit right after the constant in graded lex order
        Eigen::VectorXd x(problem.num_vars());
        for (int i = 0; i < problem.num_vars(); ++i) x[i] = md.y[1 + i];
        rep.candidate = x;
        rep.candidate_feasible = true;
        for (const auto& g : problem.generators)
            if (g.evaluate(x) < -feas_tol) { rep.candidate_feasible = false; break; }
        rep.candidate_value = problem.objective.evaluate(x);
    }
    return rep;
}

}  // namespace bsos
