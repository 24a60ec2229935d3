#include "bsos/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "bsos/kernels.hpp"

namespace bsos {

void SolverOptions::validate() const {
    if (tol_gap <= 0 || tol_feas <= 0 || max_iter < 1) throw std::invalid_argument("bad solver tolerances");
    if (step_fraction <= 0 || step_fraction >= 1) throw std::invalid_argument("step_fraction in (0,1)");
    if (infeasibility_ratio <= 1) throw std::invalid_argument("infeasibility_ratio > 1");
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::Unbounded: return "Unbounded";
        case SolveStatus::MaxIter: return "MaxIter";
        case SolveStatus::NumericalFailure: return "NumericalFailure";
    }
    return "?";
}

namespace {

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// largest a with x + a dx >= 0
double max_step_nn(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) {
    double a = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (dx[i] < 0) a = std::min(a, -x[i] / dx[i]);
    return a;
}

// largest a with X + a dX psd, given X = L L'
double max_step_psd(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::MatrixXd& dX) {
    const auto& L = llt.matrixL();
    Eigen::MatrixXd M = L.solve(dX);
    M = L.solve(M.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(M), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    return lo >= 0 ? std::numeric_limits<double>::infinity() : 1.0 / -lo;
}

// [<v_p, M v_p>]_p for symmetric M
Eigen::VectorXd quad_forms(const Eigen::MatrixXd& V, const Eigen::MatrixXd& M) {
    if (V.rows() == 0) return Eigen::VectorXd::Zero(V.cols());
    const Eigen::MatrixXd T = M * V;
    return V.cwiseProduct(T).colwise().sum().transpose();
}

struct Equilibrated {
    RowMajorMatrixXd h;        // scaled H
    Eigen::VectorXd b;         // scaled rhs
    Eigen::VectorXd free_col;  // scaled all-ones column
    Eigen::MatrixXd v;         // scaled basis vectors
    Eigen::VectorXd col_scale; // lambda_orig = lambda_scaled / col_scale
    Eigen::VectorXd row_scale; // theta_orig = theta_scaled / row_scale
};

Equilibrated equilibrate(const SdpInstance& inst) {
    const Eigen::Index L = inst.num_rows();
    const Eigen::Index P = inst.num_pairs();
    Equilibrated eq;
    eq.col_scale = inst.h_matrix.cwiseAbs().colwise().maxCoeff().cwiseMax(1e-12).transpose();
    eq.h = inst.h_matrix * eq.col_scale.cwiseInverse().asDiagonal();
    eq.row_scale.resize(L);
    for (Eigen::Index p = 0; p < L; ++p) {
        double r = std::max(1.0, eq.h.row(p).cwiseAbs().maxCoeff());
        r = std::max(r, std::abs(inst.rhs[p]));
        if (inst.psd_dim()) r = std::max(r, inst.basis_vectors.col(p).squaredNorm());
        eq.row_scale[p] = r;
    }
    eq.h = eq.row_scale.cwiseInverse().asDiagonal() * eq.h;
    eq.b = inst.rhs.cwiseQuotient(eq.row_scale);
    eq.free_col = eq.row_scale.cwiseInverse();
    if (inst.psd_dim())
        eq.v = inst.basis_vectors * eq.row_scale.cwiseSqrt().cwiseInverse().asDiagonal();
    return eq;
}

struct BorderedSchur {
    // factorization of [S -f; f' 0] with S spd via bordered elimination
    Eigen::LLT<Eigen::MatrixXd> llt;
    const Eigen::MatrixXd* s = nullptr;
    const Eigen::VectorXd* f = nullptr;
    Eigen::VectorXd w;   // S^{-1} f
    double fw = 0.0;

    bool factor(const Eigen::MatrixXd& S, const Eigen::VectorXd& fcol) {
        s = &S;
        f = &fcol;
        const double scale = std::max(1.0, S.diagonal().maxCoeff());
        double reg = 1e-14 * scale;
        Eigen::MatrixXd Sreg;
        for (int tries = 0; tries < 8; ++tries) {
            Sreg = S + reg * Eigen::MatrixXd::Identity(S.rows(), S.cols());
            llt.compute(Sreg);
            if (llt.info() == Eigen::Success) break;
            reg *= 100;
        }
        if (llt.info() != Eigen::Success) return false;
        w = llt.solve(fcol);
        fw = fcol.dot(w);
        return fw > 0;
    }

    // S dth - f dt = r1,  f' dth = r2, with iterative refinement against the
    // unregularized S
    void solve(const Eigen::VectorXd& r1, double r2, Eigen::VectorXd& dth, double& dt) const {
        dth.setZero(r1.size());
        dt = 0.0;
        Eigen::VectorXd res1 = r1;
        double res2 = r2;
        const double r1scale = std::max(1.0, r1.cwiseAbs().maxCoeff());
        for (int round = 0; round < 8; ++round) {
            const Eigen::VectorXd u = llt.solve(res1);
            const double ddt = (res2 - f->dot(u)) / fw;
            dth += u + ddt * w;
            dt += ddt;
            res1 = r1 - ((*s) * dth - (*f) * dt);
            res2 = r2 - f->dot(dth);
            if (res1.cwiseAbs().maxCoeff() <= 1e-15 * r1scale) break;
        }
    }
};

struct BestIterate {
    double score = std::numeric_limits<double>::infinity();
    double t = 0.0;
    Eigen::VectorXd lam, th;
    Eigen::MatrixXd q;
    double pinf = 0.0, dinf = 0.0, gap = 0.0;
    int iters = 0;
};

}  // namespace

SchurSystem schur_assemble(const Eigen::MatrixXd& w_scaling, const Eigen::MatrixXd& basis_vectors,
                           const Eigen::VectorXd& d_weights, const RowMajorMatrixXd& h_matrix,
                           const Eigen::VectorXd& free_col) {
    const Eigen::Index L = h_matrix.rows();
    const Eigen::Index P = h_matrix.cols();
    SchurSystem out;
    out.free_col = free_col;
    out.s.setZero(L, L);

    if (w_scaling.size()) {
        Eigen::LLT<Eigen::MatrixXd> chk(w_scaling);
        if (chk.info() != Eigen::Success)
            throw NonSpdScaling("schur_assemble: scaling matrix not positive definite");
        // G = V' (W V); psd contribution is the elementwise square of G
        const Eigen::MatrixXd WV = w_scaling * basis_vectors;
        const Eigen::MatrixXd G = basis_vectors.transpose() * WV;
        kernels::parallel_for(static_cast<std::size_t>(L), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t p = lo; p < hi; ++p) {
                const auto pi = static_cast<Eigen::Index>(p);
                for (Eigen::Index q = 0; q <= pi; ++q) {
                    const double g = G(pi, q);
                    out.s(pi, q) += g * g;
                }
            }
        });
    }

    if (P) {
        RowMajorMatrixXd hd(L, P);
        const auto& ops = kernels::ops();
        kernels::parallel_for(static_cast<std::size_t>(L), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t p = lo; p < hi; ++p) {
                const auto pi = static_cast<Eigen::Index>(p);
                ops.scale(hd.row(pi).data(), h_matrix.row(pi).data(), d_weights.data(),
                          static_cast<std::size_t>(P));
            }
        });
        kernels::parallel_for(static_cast<std::size_t>(L), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t p = lo; p < hi; ++p) {
                const auto pi = static_cast<Eigen::Index>(p);
                for (Eigen::Index q = 0; q <= pi; ++q)
                    out.s(pi, q) += ops.dot(hd.row(pi).data(), h_matrix.row(q).data(),
                                            static_cast<std::size_t>(P));
            }
        });
    }

    out.s.triangularView<Eigen::StrictlyUpper>() = out.s.transpose();
    return out;
}

SolveResult solve(const SdpInstance& inst, const SolverOptions& opts) {
    opts.validate();
    SolveResult res;
    const Eigen::Index L = inst.num_rows();
    const Eigen::Index P = inst.num_pairs();
    const Eigen::Index sdim = inst.mode == Mode::Bsos ? inst.psd_dim() : 0;

    if (inst.rhs_inconsistent) {
        res.status = SolveStatus::Infeasible;
        res.note = "equality system inconsistent (rank certificate at presolve)";
        return res;
    }
    if (L == 0) {
        res.status = SolveStatus::Unbounded;
        res.note = "no constraints";
        return res;
    }

    const Equilibrated eq = equilibrate(inst);
    const double nu = static_cast<double>(P + sdim);
    const double normb = 1.0 + eq.b.cwiseAbs().maxCoeff();

    double t = 0.0;
    const double xi = std::max(1.0, eq.b.cwiseAbs().maxCoeff());
    Eigen::VectorXd lam = Eigen::VectorXd::Constant(P, xi);
    Eigen::VectorXd slack = Eigen::VectorXd::Constant(P, xi);
    Eigen::MatrixXd Q, Z;
    if (sdim) {
        Q = xi * Eigen::MatrixXd::Identity(sdim, sdim);
        Z = xi * Eigen::MatrixXd::Identity(sdim, sdim);
    }
    Eigen::VectorXd th = Eigen::VectorXd::Zero(L);

    BestIterate best;
    int stall = 0;
    double pinf = 0, dinf = 0, relgap = 0;

    const auto finish = [&](SolveStatus st, const BestIterate& it) {
        res.status = st;
        res.bound = it.t;
        res.lambda = it.lam.cwiseQuotient(eq.col_scale);
        res.theta = it.th.cwiseQuotient(eq.row_scale);
        if (sdim) res.q_matrix = it.q;
        res.primal_residual = it.pinf;
        res.dual_residual = it.dinf;
        res.gap = it.gap;
        res.iterations = it.iters;
        return res;
    };

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        const Eigen::VectorXd rp = eq.b - eq.free_col * t - eq.h * lam -
                                   (sdim ? quad_forms(eq.v, Q) : Eigen::VectorXd::Zero(L));
        const double rt = 1.0 - eq.free_col.dot(th);
        const Eigen::VectorXd rs = slack - eq.h.transpose() * th;
        Eigen::MatrixXd Rz;
        if (sdim) Rz = Z - symmetrize(eq.v * th.asDiagonal() * eq.v.transpose());

        const double gap = lam.dot(slack) + (sdim ? Q.cwiseProduct(Z).sum() : 0.0);
        const double mu = gap / nu;
        const double pobj = t;
        const double dobj = eq.b.dot(th);
        relgap = std::abs(dobj - pobj) / (1 + std::abs(pobj) + std::abs(dobj));
        pinf = rp.cwiseAbs().maxCoeff() / normb;
        dinf = std::max({rs.cwiseAbs().maxCoeff(), std::abs(rt),
                         sdim ? Rz.cwiseAbs().maxCoeff() : 0.0}) / (1 + std::abs(dobj));
        if (opts.verbose)
            std::printf("  it %3d  mu %.2e  pinf %.2e  dinf %.2e  gap %.2e  pobj % .8f  dobj % .8f\n",
                        iter, mu, pinf, dinf, relgap, pobj, dobj);

        const double score = std::max({pinf, dinf, relgap});
        if (score < 0.9 * best.score)
            stall = 0;
        else
            ++stall;
        if (score < best.score)
            best = {score, t, lam, th, sdim ? Q : Eigen::MatrixXd(), pinf, dinf, relgap, iter};

        if (pinf < opts.tol_feas && dinf < opts.tol_feas && relgap < opts.tol_gap)
            return finish(SolveStatus::Optimal, best);
        const double iterate_norm = th.cwiseAbs().maxCoeff() + (P ? lam.cwiseAbs().maxCoeff() : 0.0);
        if (iterate_norm > opts.infeasibility_ratio && pinf > 1e-6) {
            res.status = SolveStatus::Infeasible;
            res.iterations = iter;
            res.primal_residual = pinf;
            res.dual_residual = dinf;
            res.note = "iterate blow-up with stalled primal residual";
            return res;
        }
        if (t > 1e12 * normb && pinf < 1e-6) {
            res.status = SolveStatus::Unbounded;
            res.iterations = iter;
            return res;
        }
        if (stall >= 10) {
            const bool ok = best.score < std::max(opts.tol_feas, opts.tol_gap);
            return finish(ok ? SolveStatus::Optimal : SolveStatus::MaxIter, best);
        }

        // Nesterov-Todd scalings
        const Eigen::VectorXd d_nn = lam.cwiseQuotient(slack);
        Eigen::MatrixXd W, R, Rinv;
        Eigen::VectorXd lam_psd;
        Eigen::LLT<Eigen::MatrixXd> lltQ, lltZ;
        if (sdim) {
            lltQ.compute(Q);
            lltZ.compute(Z);
            if (lltQ.info() != Eigen::Success || lltZ.info() != Eigen::Success) {
                res.note = "cone iterate lost definiteness";
                return finish(SolveStatus::NumericalFailure, best);
            }
            const Eigen::MatrixXd Lq = lltQ.matrixL();
            const Eigen::MatrixXd Lz = lltZ.matrixL();
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(Lz.transpose() * Lq,
                                                  Eigen::ComputeThinU | Eigen::ComputeThinV);
            lam_psd = svd.singularValues();
            if (lam_psd.minCoeff() <= 0) {
                res.note = "NT scaling breakdown";
                return finish(SolveStatus::NumericalFailure, best);
            }
            const Eigen::VectorXd risq = lam_psd.cwiseSqrt().cwiseInverse();
            R = Lq * svd.matrixV() * risq.asDiagonal();
            // R^{-1} = diag(sig^{1/2}) V' Lq^{-1}
            Rinv = lam_psd.cwiseSqrt().asDiagonal() * svd.matrixV().transpose() *
                   Lq.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(sdim, sdim));
            W = R * R.transpose();
        }

        SchurSystem schur = schur_assemble(sdim ? W : Eigen::MatrixXd(), eq.v, d_nn, eq.h, eq.free_col);
        BorderedSchur kkt;
        if (!kkt.factor(schur.s, schur.free_col)) {
            res.note = "Schur complement numerically singular";
            return finish(SolveStatus::NumericalFailure, best);
        }

        Eigen::VectorXd dth(L), ds(P), dlam(P);
        double dt = 0;
        Eigen::MatrixXd dQ, dZ;
        Eigen::MatrixXd WRzW;
        Eigen::VectorXd a_wrzw = Eigen::VectorXd::Zero(L);
        if (sdim) {
            WRzW = W * Rz * W;
            a_wrzw = quad_forms(eq.v, WRzW);
        }

        const auto newton = [&](double sig_mu, const Eigen::VectorXd& corr_nn,
                                const Eigen::MatrixXd& corr_psd) {
            const Eigen::VectorXd c_nn =
                (Eigen::VectorXd::Constant(P, sig_mu) - lam.cwiseProduct(slack) - corr_nn);
            const Eigen::VectorXd v1 = c_nn.cwiseQuotient(slack);
            Eigen::VectorXd r1 = -rp + eq.h * v1 + eq.h * d_nn.cwiseProduct(rs).matrix();
            Eigen::MatrixXd G;
            if (sdim) {
                Eigen::MatrixXd dres = sdim && corr_psd.size() ? (-corr_psd).eval()
                                                               : Eigen::MatrixXd::Zero(sdim, sdim).eval();
                dres.diagonal().array() += sig_mu;
                dres.diagonal() -= lam_psd.cwiseAbs2();
                Eigen::MatrixXd E(sdim, sdim);
                for (Eigen::Index i = 0; i < sdim; ++i)
                    for (Eigen::Index j = 0; j < sdim; ++j)
                        E(i, j) = 2.0 * dres(i, j) / (lam_psd[i] + lam_psd[j]);
                G = R * E * R.transpose();
                r1 += quad_forms(eq.v, G) + a_wrzw;
            }
            kkt.solve(r1, rt, dth, dt);
            ds = eq.h.transpose() * dth - rs;
            dlam = v1 - d_nn.cwiseProduct(ds);
            if (sdim) {
                dZ = symmetrize(eq.v * dth.asDiagonal() * eq.v.transpose()) - Rz;
                dQ = G - W * dZ * W;
            }
        };

        // predictor
        newton(0.0, Eigen::VectorXd::Zero(P), sdim ? Eigen::MatrixXd::Zero(sdim, sdim) : Eigen::MatrixXd());
        double ap = std::min(1.0, max_step_nn(lam, dlam));
        double ad = std::min(1.0, max_step_nn(slack, ds));
        if (sdim) {
            ap = std::min(ap, max_step_psd(lltQ, dQ));
            ad = std::min(ad, max_step_psd(lltZ, dZ));
            ap = std::min(ap, 1.0);
            ad = std::min(ad, 1.0);
        }
        double gap_aff = (lam + ap * dlam).dot(slack + ad * ds);
        if (sdim) gap_aff += (Q + ap * dQ).cwiseProduct(Z + ad * dZ).sum();
        const double sigma = std::clamp(std::pow(std::max(gap_aff, 0.0) / gap, 3.0), 0.0, 1.0);

        // corrector
        const Eigen::VectorXd corr_nn = dlam.cwiseProduct(ds);
        Eigen::MatrixXd corr_psd;
        if (sdim) {
            const Eigen::MatrixXd dQt = Rinv * dQ * Rinv.transpose();
            const Eigen::MatrixXd dZt = R.transpose() * dZ * R;
            corr_psd = symmetrize(dQt * dZt);
        }
        newton(sigma * mu, corr_nn, corr_psd);
        ap = max_step_nn(lam, dlam);
        ad = max_step_nn(slack, ds);
        if (sdim) {
            ap = std::min(ap, max_step_psd(lltQ, dQ));
            ad = std::min(ad, max_step_psd(lltZ, dZ));
        }
        ap = std::min(1.0, opts.step_fraction * ap);
        ad = std::min(1.0, opts.step_fraction * ad);

        // back off if roundoff pushed an iterate outside its cone
        for (int guard = 0; guard < 30; ++guard) {
            bool ok = ((lam + ap * dlam).array() > 0).all() && ((slack + ad * ds).array() > 0).all();
            if (ok && sdim) {
                ok = Eigen::LLT<Eigen::MatrixXd>(symmetrize(Q + ap * dQ)).info() == Eigen::Success &&
                     Eigen::LLT<Eigen::MatrixXd>(symmetrize(Z + ad * dZ)).info() == Eigen::Success;
            }
            if (ok) break;
            ap *= 0.8;
            ad *= 0.8;
        }

        t += ap * dt;
        lam += ap * dlam;
        th += ad * dth;
        slack += ad * ds;
        if (sdim) {
            Q = symmetrize(Q + ap * dQ);
            Z = symmetrize(Z + ad * dZ);
        }
    }

    const bool ok = best.score < std::max(opts.tol_feas, opts.tol_gap);
    return finish(ok ? SolveStatus::Optimal : SolveStatus::MaxIter, best);
}

SolveResult solve_lp(const SdpInstance& inst, const SolverOptions& opts) {
    if (inst.mode != Mode::Lp)
        throw std::invalid_argument("solve_lp: instance not assembled in LP mode");
    return solve(inst, opts);
}

KktReport kkt_check(const SdpInstance& inst, const SolveResult& result) {
    KktReport rep;
    const Eigen::Index L = inst.num_rows();
    const Eigen::Index sdim = inst.mode == Mode::Bsos ? inst.psd_dim() : 0;

    double worst = 0.0;
    for (Eigen::Index p = 0; p < L; ++p) {
        double lhs = result.bound + inst.h_matrix.row(p).dot(result.lambda);
        if (sdim) {
            const Eigen::VectorXd v = inst.basis_vectors.col(p);
            lhs += v.dot(result.q_matrix * v);
        }
        worst = std::max(worst, std::abs(inst.rhs[p] - lhs));
    }
    rep.primal_residual = worst;
    rep.lambda_min = result.lambda.size() ? result.lambda.minCoeff() : 0.0;

    if (result.theta.size() == L) {
        const Eigen::VectorXd hth = inst.h_matrix.transpose() * result.theta;
        rep.dual_slack_min = hth.size() ? hth.minCoeff() : 0.0;
        rep.theta_sum_error = std::abs(result.theta.sum() - 1.0);
        rep.duality_gap = std::abs(inst.rhs.dot(result.theta) - result.bound);
        if (sdim) {
            Eigen::MatrixXd zsum = Eigen::MatrixXd::Zero(sdim, sdim);
            for (Eigen::Index p = 0; p < L; ++p) {
                const Eigen::VectorXd v = inst.basis_vectors.col(p);
                zsum += result.theta[p] * v * v.transpose();
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(zsum), Eigen::EigenvaluesOnly);
            rep.dual_psd_min_eig = es.eigenvalues().minCoeff();
        }
    }
    return rep;
}

}  // namespace bsos
