#include "bsos/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bsos/kernels.hpp"
#include "bsos/rng.hpp"

namespace bsos {

void RelaxationConfig::validate() const {
    if (d < 1) throw std::invalid_argument("relaxation: d >= 1 required");
    if (k < 0) throw std::invalid_argument("relaxation: k >= 0 required");
    if (mode == Mode::Lp && k != 0) throw std::invalid_argument("LP mode forces k = 0");
    if (redundancy_tol <= 0 || min_coord < 0) throw std::invalid_argument("bad tolerances");
}

namespace {

void enumerate_degree(int n, int deg, std::vector<int>& cur, int pos,
                      std::vector<std::vector<int>>& out) {
    if (pos == n - 1) {
        cur[pos] = deg;
        out.push_back(cur);
        cur[pos] = 0;
        return;
    }
    for (int e = deg; e >= 0; --e) {
        cur[pos] = e;
        enumerate_degree(n, deg - e, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

double ipow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

}  // namespace

std::vector<PairExponent> enumerate_pairs(int m, int d) {
    if (m < 1 || d < 1) throw std::invalid_argument("enumerate_pairs: m >= 1, d >= 1");
    std::vector<PairExponent> out;
    std::vector<int> cur(2 * m, 0);
    for (int deg = 0; deg <= d; ++deg)
        enumerate_degree(2 * m, deg, cur, 0, out);
    return out;
}

int compute_tau(const SemialgebraicProblem& p, int d, int k) {
    int gdeg = 0;
    for (const auto& g : p.generators) gdeg = std::max(gdeg, g.degree());
    return std::max({p.objective.degree(), 2 * k, d * gdeg});
}

Eigen::MatrixXd sample_points(int n, std::int64_t L, std::uint64_t seed, double min_coord) {
    if (L < 1) throw std::invalid_argument("sample_points: L >= 1");
    SplitMix64 rng(seed);
    Eigen::MatrixXd pts(L, n);
    for (std::int64_t p = 0; p < L; ++p)
        for (int i = 0; i < n; ++i) {
            double c = rng.next_symmetric();
            while (std::abs(c) < min_coord) c = rng.next_symmetric();
            pts(p, i) = c;
        }
    return pts;
}

double eval_h(const SemialgebraicProblem& p, const PairExponent& pair, const Eigen::VectorXd& z) {
    const int m = p.num_generators();
    if (static_cast<int>(pair.size()) != 2 * m)
        throw std::invalid_argument("eval_h: pair length != 2m");
    double v = 1.0;
    for (int j = 0; j < m; ++j) {
        if (!pair[j] && !pair[m + j]) continue;
        const double gj = p.generators[j].evaluate(z);
        if (pair[j]) v *= ipow(gj, pair[j]);
        if (pair[m + j]) v *= ipow(1.0 - gj, pair[m + j]);
    }
    return v;
}

SdpInstance assemble_raw(const SemialgebraicProblem& p, const RelaxationConfig& cfg) {
    p.validate();
    cfg.validate();
    const int n = p.num_vars();
    const int m = p.num_generators();
    const int tau = compute_tau(p, cfg.d, cfg.k);
    const std::int64_t L = binomial(n + tau, n);
    if (L <= 0 || static_cast<std::size_t>(L) > cfg.max_rows)
        throw InstanceTooLarge("instance too large: n=" + std::to_string(n) +
                               " tau=" + std::to_string(tau) + " L=" + std::to_string(L));

    SdpInstance inst;
    inst.n = n;
    inst.m = m;
    inst.d = cfg.d;
    inst.k = cfg.k;
    inst.tau = tau;
    inst.mode = cfg.mode;
    inst.pair_index = enumerate_pairs(m, cfg.d);
    inst.points = sample_points(n, L, cfg.seed, cfg.min_coord);

    const std::int64_t P = static_cast<std::int64_t>(inst.pair_index.size());
    inst.h_matrix.resize(L, P);
    inst.rhs.resize(L);
    const MonomialBasis vb = cfg.mode == Mode::Bsos ? monomial_basis(n, cfg.k) : MonomialBasis{};
    if (cfg.mode == Mode::Bsos)
        inst.basis_vectors.resize(static_cast<Eigen::Index>(vb.size()), L);

    const int maxpow = cfg.d;
    kernels::parallel_for(static_cast<std::size_t>(L), [&](std::size_t lo, std::size_t hi) {
        Eigen::MatrixXd gpow(m, maxpow + 1);      // g_j(z)^e
        Eigen::MatrixXd cpow(m, maxpow + 1);      // (1 - g_j(z))^e
        for (std::size_t pp = lo; pp < hi; ++pp) {
            const auto pi = static_cast<Eigen::Index>(pp);
            const Eigen::VectorXd z = inst.points.row(pi).transpose();
            for (int j = 0; j < m; ++j) {
                const double gj = p.generators[j].evaluate(z);
                gpow(j, 0) = cpow(j, 0) = 1.0;
                for (int e = 1; e <= maxpow; ++e) {
                    gpow(j, e) = gpow(j, e - 1) * gj;
                    cpow(j, e) = cpow(j, e - 1) * (1.0 - gj);
                }
            }
            for (std::int64_t q = 0; q < P; ++q) {
                const auto& pr = inst.pair_index[q];
                double v = 1.0;
                for (int j = 0; j < m; ++j) {
                    if (pr[j]) v *= gpow(j, pr[j]);
                    if (pr[m + j]) v *= cpow(j, pr[m + j]);
                }
                inst.h_matrix(pi, q) = v;
            }
            inst.rhs[pi] = p.objective.evaluate(z);
            if (cfg.mode == Mode::Bsos)
                inst.basis_vectors.col(pi) = eval_monomial_vector(vb, z);
        }
    });

    inst.kept_rows.resize(L);
    std::iota(inst.kept_rows.begin(), inst.kept_rows.end(), 0);
    return inst;
}

namespace {

// Greedy pivoted modified Gram-Schmidt over the columns of A, stopping when
// every remaining column is within tol (relative to the largest column) of
// the span of the selected ones.  Returns selected indices in pivot order.
std::vector<int> pivoted_span(const Eigen::MatrixXd& A, double tol) {
    const Eigen::Index D = A.rows(), L = A.cols();
    Eigen::VectorXd norms2(L);
    for (Eigen::Index j = 0; j < L; ++j) norms2[j] = A.col(j).squaredNorm();
    const double scale = std::sqrt(norms2.maxCoeff());
    if (scale == 0.0) return {};
    const double thresh = tol * scale;
    const double thresh2 = thresh * thresh;

    Eigen::MatrixXd Q(D, std::min(D, L));
    std::vector<int> picked;
    Eigen::VectorXd c(D);
    while (true) {
        Eigen::Index best;
        if (norms2.maxCoeff(&best) <= thresh2) break;
        c = A.col(best);
        // two MGS passes for a trustworthy residual
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t r = 0; r < picked.size(); ++r)
                c -= Q.col(static_cast<Eigen::Index>(r)).dot(c) * Q.col(static_cast<Eigen::Index>(r));
        const double nrm = c.norm();
        if (nrm <= thresh) {     // estimate was stale; column is dependent
            norms2[best] = 0.0;
            continue;
        }
        c /= nrm;
        Q.col(static_cast<Eigen::Index>(picked.size())) = c;
        picked.push_back(static_cast<int>(best));
        norms2[best] = 0.0;
        for (Eigen::Index j = 0; j < L; ++j) {
            if (norms2[j] == 0.0) continue;
            const double w = c.dot(A.col(j));
            norms2[j] = std::max(0.0, norms2[j] - w * w);
        }
        if (static_cast<Eigen::Index>(picked.size()) == std::min(D, L)) break;
    }
    return picked;
}

}  // namespace

SdpInstance remove_redundant(const SdpInstance& inst, double tol) {
    const std::int64_t L = inst.num_rows();
    const std::int64_t P = inst.num_pairs();
    const std::int64_t s = inst.psd_dim();
    const std::int64_t svec = s * (s + 1) / 2;
    const std::int64_t W = 1 + P + svec;

    // stacked rows [1 | H_p | svec(v_p v_p')] with the rhs appended, columns
    // scaled to unit left-side norm
    Eigen::MatrixXd full(W + 1, L);
    kernels::parallel_for(static_cast<std::size_t>(L), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t pp = lo; pp < hi; ++pp) {
            const auto p = static_cast<Eigen::Index>(pp);
            full(0, p) = 1.0;
            full.col(p).segment(1, P) = inst.h_matrix.row(p).transpose();
            if (s) {
                const Eigen::VectorXd v = inst.basis_vectors.col(p);
                std::int64_t at = 1 + P;
                for (std::int64_t i = 0; i < s; ++i)
                    for (std::int64_t j = i; j < s; ++j)
                        full(at++, p) = (i == j ? 1.0 : std::numbers::sqrt2) * v[i] * v[j];
            }
            full(W, p) = inst.rhs[p];
            full.col(p) /= full.col(p).head(W).norm();
        }
    });

    std::vector<int> keep = pivoted_span(full.topRows(W), tol);
    std::sort(keep.begin(), keep.end());
    const auto Lk = static_cast<Eigen::Index>(keep.size());

    // Dropped rows are left-side dependent on the kept ones; if one of them
    // is not dependent once b is included, no (t, lambda, Q) satisfies the
    // equality system.  The certificate tolerance is far looser than the
    // rank tolerance so threshold-level noise cannot trigger it.
    bool inconsistent = false;
    if (Lk < L) {
        Eigen::MatrixXd q(W + 1, Lk);
        for (Eigen::Index i = 0; i < Lk; ++i) {
            Eigen::VectorXd c = full.col(keep[static_cast<std::size_t>(i)]);
            for (int pass = 0; pass < 2; ++pass)
                for (Eigen::Index r = 0; r < i; ++r) c -= q.col(r).dot(c) * q.col(r);
            q.col(i) = c / c.norm();
        }
        const double incons_tol = std::max(1e-6, 1e3 * tol);
        std::vector<char> kept_mask(static_cast<std::size_t>(L), 0);
        for (int kidx : keep) kept_mask[static_cast<std::size_t>(kidx)] = 1;
        for (Eigen::Index j = 0; j < L && !inconsistent; ++j) {
            if (kept_mask[static_cast<std::size_t>(j)]) continue;
            Eigen::VectorXd r = full.col(j);
            for (int pass = 0; pass < 2; ++pass)
                for (Eigen::Index i = 0; i < Lk; ++i) r -= q.col(i).dot(r) * q.col(i);
            if (r.norm() > incons_tol) inconsistent = true;
        }
    }

    SdpInstance out;
    out.n = inst.n; out.m = inst.m; out.d = inst.d; out.k = inst.k;
    out.tau = inst.tau; out.mode = inst.mode;
    out.pair_index = inst.pair_index;
    out.rhs_inconsistent = inconsistent;
    out.points.resize(Lk, inst.n);
    out.h_matrix.resize(Lk, P);
    out.rhs.resize(Lk);
    if (s) out.basis_vectors.resize(s, Lk);
    out.kept_rows.reserve(keep.size());
    for (std::int64_t i = 0; i < Lk; ++i) {
        const int src = keep[static_cast<std::size_t>(i)];
        out.points.row(i) = inst.points.row(src);
        out.h_matrix.row(i) = inst.h_matrix.row(src);
        out.rhs[i] = inst.rhs[src];
        if (s) out.basis_vectors.col(i) = inst.basis_vectors.col(src);
        out.kept_rows.push_back(inst.kept_rows[static_cast<std::size_t>(src)]);
    }
    return out;
}

SdpInstance assemble(const SemialgebraicProblem& p, const RelaxationConfig& cfg) {
    return remove_redundant(assemble_raw(p, cfg), cfg.redundancy_tol);
}

}  // namespace bsos
