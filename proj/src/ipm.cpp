// Copyright 2026 The qcomb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcomb/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/QR>

namespace qcomb::ipm {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Blocks = std::vector<MatrixXd>;

std::string to_string(Status s) {
    switch (s) {
        case Status::Optimal: return "optimal";
        case Status::MaxIterations: return "max_iterations";
        case Status::NumericalFailure: return "numerical_failure";
        case Status::Infeasible: return "infeasible";
    }
    return "unknown";
}

double inner(const Blocks &a, const Blocks &b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
    return s;
}

namespace {

double frobenius(const Blocks &a) { return std::sqrt(inner(a, a)); }

std::vector<kernels::SparseEntry> entries_of(const kernels::ConstraintPattern &p, int i) {
    std::vector<kernels::SparseEntry> out;
    for (const auto &[block, pos] : p.by_constraint[i]) {
        const auto &slice = p.by_block[block][pos];
        out.insert(out.end(), p.entries.begin() + slice.begin, p.entries.begin() + slice.end);
    }
    return out;
}

struct Presolved {
    kernels::ConstraintPattern pattern;
    VectorXd rhs;
    std::vector<int> kept;          // indices into the original constraints
    MatrixXd coefficients;          // dropped constraint d = sum_k coefficients(k, d) * kept k
    std::vector<int> dropped;
    bool consistent = true;
};

Presolved presolve(const Problem &p) {
    Presolved out;
    const int m = p.constraints.num_constraints;
    Blocks eye;
    for (int d : p.block_dims) eye.push_back(MatrixXd::Identity(d, d));
    const MatrixXd gram = kernels::schur_complement(p.constraints, eye);
    Eigen::ColPivHouseholderQR<MatrixXd> qr(gram);
    qr.setThreshold(1e-10);
    const int rank = static_cast<int>(qr.rank());
    if (rank == m) {
        out.pattern = p.constraints;
        out.rhs = p.rhs;
        for (int i = 0; i < m; ++i) out.kept.push_back(i);
        return out;
    }
    const auto perm = qr.colsPermutation().indices();
    for (int k = 0; k < m; ++k) (k < rank ? out.kept : out.dropped).push_back(perm[k]);
    std::sort(out.kept.begin(), out.kept.end());
    std::sort(out.dropped.begin(), out.dropped.end());

    MatrixXd gkk(rank, rank), gkd(rank, out.dropped.size());
    for (int a = 0; a < rank; ++a) {
        for (int b = 0; b < rank; ++b) gkk(a, b) = gram(out.kept[a], out.kept[b]);
        for (std::size_t d = 0; d < out.dropped.size(); ++d) gkd(a, d) = gram(out.kept[a], out.dropped[d]);
    }
    out.coefficients = gkk.ldlt().solve(gkd);
    VectorXd bk(rank);
    for (int a = 0; a < rank; ++a) bk[a] = p.rhs[out.kept[a]];
    const double scale = 1.0 + p.rhs.cwiseAbs().maxCoeff();
    for (std::size_t d = 0; d < out.dropped.size(); ++d) {
        const double implied = out.coefficients.col(d).dot(bk);
        if (std::abs(implied - p.rhs[out.dropped[d]]) > 1e-8 * scale) out.consistent = false;
    }
    std::vector<std::vector<kernels::SparseEntry>> cons;
    for (int i : out.kept) cons.push_back(entries_of(p.constraints, i));
    out.pattern = kernels::ConstraintPattern::build(p.constraints.num_blocks, cons);
    out.rhs = bk;
    return out;
}

struct Scaling {
    MatrixXd g;       // X = G diag(lambda) G^T, Z = G^{-T} diag(lambda) G^{-1}
    MatrixXd g_inv;
    VectorXd lambda;
    MatrixXd w;       // G G^T, satisfies W Z W = X
};

bool nt_scaling(const MatrixXd &x, const MatrixXd &z, Scaling &s) {
    Eigen::LLT<MatrixXd> chol(x);
    if (chol.info() != Eigen::Success) return false;
    const MatrixXd l = chol.matrixL();
    const MatrixXd lzl = l.transpose() * z * l;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (lzl + lzl.transpose()));
    if (es.info() != Eigen::Success) return false;
    const VectorXd ev = es.eigenvalues();
    if (ev.minCoeff() <= 0.0 || !ev.allFinite()) return false;
    s.lambda = ev.cwiseSqrt();
    const VectorXd rs = s.lambda.cwiseSqrt().cwiseInverse();
    s.g = l * es.eigenvectors() * rs.asDiagonal();
    // G^{-1} = diag(sqrt(lambda)) Q^T L^{-1}
    const MatrixXd qt_linv = l.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors()).transpose();
    s.g_inv = s.lambda.cwiseSqrt().asDiagonal() * qt_linv;
    s.w = s.g * s.g.transpose();
    return true;
}

/// Largest alpha with V + alpha dV >= 0 for V = diag(lambda), or +inf.
double max_step(const VectorXd &lambda, const MatrixXd &dv) {
    const VectorXd r = lambda.cwiseSqrt().cwiseInverse();
    const MatrixXd s = r.asDiagonal() * dv * r.asDiagonal();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (s + s.transpose()), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    return lo >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lo;
}

Blocks sandwich(const std::vector<Scaling> &sc, const Blocks &a) {
    Blocks out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = sc[k].w * a[k] * sc[k].w;
    return out;
}

}  // namespace

Result solve(const Problem &problem, const Options &options, const Point *start) {
    Result res;
    const Presolved pre = presolve(problem);
    const int m_full = problem.constraints.num_constraints;
    res.removed_constraints = static_cast<int>(pre.dropped.size());
    if (!pre.consistent) {
        res.status = Status::Infeasible;
        res.message = "linearly dependent constraints have inconsistent right-hand sides";
        return res;
    }
    const auto &pattern = pre.pattern;
    const VectorXd &b = pre.rhs;
    const auto &c = problem.objective;
    const auto &dims = problem.block_dims;
    const int nb = static_cast<int>(dims.size());
    const int m = pattern.num_constraints;
    int n_total = 0;
    for (int d : dims) n_total += d;

    Blocks x, z;
    VectorXd y;
    if (start) {
        x = start->x;
        z = start->z;
        y = VectorXd::Zero(m);
        for (int a = 0; a < m; ++a) y[a] = start->y[pre.kept[a]];
        for (std::size_t d = 0; d < pre.dropped.size(); ++d) {
            const double yd = start->y[pre.dropped[d]];
            for (int a = 0; a < m; ++a) y[a] += pre.coefficients(a, d) * yd;
        }
    } else {
        const double cnorm = frobenius(c);
        const double bnorm = b.size() ? b.cwiseAbs().maxCoeff() : 0.0;
        const double xi = std::max(10.0, std::sqrt(static_cast<double>(n_total)) * (1.0 + bnorm));
        const double eta = std::max(10.0, std::sqrt(static_cast<double>(n_total)) * (1.0 + cnorm));
        for (int d : dims) {
            x.push_back(xi * MatrixXd::Identity(d, d));
            z.push_back(eta * MatrixXd::Identity(d, d));
        }
        y = VectorXd::Zero(m);
    }

    const double bscale = 1.0 + (b.size() ? b.norm() : 0.0);
    const double cscale = 1.0 + frobenius(c);
    std::vector<Scaling> sc(nb);

    auto finish = [&](Status st, const std::string &msg) {
        res.status = st;
        res.message = msg;
        res.x = x;
        res.z = z;
        res.y = VectorXd::Zero(m_full);
        for (int a = 0; a < m; ++a) res.y[pre.kept[a]] = y[a];
        return res;
    };

    // best converged iterate seen so far, by max |XZ|
    struct Snapshot {
        Blocks x, z;
        VectorXd y;
        Result res;
    };
    std::optional<Snapshot> best;
    auto finish_failed = [&](Status st, const std::string &msg) {
        if (!best) return finish(st, msg);
        x = best->x;
        z = best->z;
        y = best->y;
        res = best->res;
        return finish(Status::Optimal, "converged");
    };

    int centering = 0;
    for (int iter = 0;; ++iter) {
        const VectorXd rp = b - kernels::apply_constraints(pattern, x);
        const Blocks aty = kernels::apply_adjoint(pattern, y, dims);
        Blocks rd(nb);
        for (int k = 0; k < nb; ++k) rd[k] = c[k] + z[k] - aty[k];
        const double pobj = inner(c, x);
        const double dobj = b.dot(y);
        const double mu = inner(x, z) / n_total;
        res.iterations = iter;
        res.primal_objective = pobj;
        res.dual_objective = dobj;
        res.relative_gap = std::abs(dobj - pobj) / (1.0 + std::max(std::abs(pobj), std::abs(dobj)));
        res.primal_infeasibility = rp.size() ? rp.norm() / bscale : 0.0;
        res.dual_infeasibility = frobenius(rd) / cscale;
        const double compl_rel = mu * n_total / (1.0 + std::max(std::abs(pobj), std::abs(dobj)));

        double xz = 0.0;
        for (int k = 0; k < nb; ++k) xz = std::max(xz, (x[k] * z[k]).cwiseAbs().maxCoeff());
        res.complementarity = xz / (1.0 + std::max(std::abs(pobj), std::abs(dobj)));
        const bool converged = res.relative_gap <= options.tol && compl_rel <= options.tol &&
                               res.primal_infeasibility <= options.tol && res.dual_infeasibility <= options.tol;
        if (converged && res.complementarity <= 0.1 * options.tol) return finish(Status::Optimal, "converged");
        if (converged && (!best || res.complementarity < best->res.complementarity)) best = Snapshot{x, z, y, res};
        if (best && centering >= options.centering_steps) return finish_failed(Status::Optimal, "converged");
        const bool center_only = best.has_value();
        if (center_only) ++centering;
        if (iter >= options.max_iter) return finish_failed(Status::MaxIterations, "iteration limit reached");

        for (int k = 0; k < nb; ++k) {
            if (!nt_scaling(x[k], z[k], sc[k])) {
                return finish_failed(Status::NumericalFailure, "lost positive definiteness in block " + std::to_string(k));
            }
        }
        Blocks wblocks(nb);
        for (int k = 0; k < nb; ++k) wblocks[k] = sc[k].w;
        MatrixXd schur = kernels::schur_complement(pattern, wblocks);
        Eigen::LLT<MatrixXd> chol(schur);
        if (chol.info() != Eigen::Success) {
            const double shift = 1e-13 * (1.0 + schur.diagonal().cwiseAbs().maxCoeff());
            schur.diagonal().array() += shift;
            chol.compute(schur);
            if (chol.info() != Eigen::Success) {
                return finish_failed(Status::NumericalFailure, "Schur complement is not positive definite");
            }
        }
        const Blocks wrdw = sandwich(sc, rd);

        // Solves for (dx, dy, dz) given the complementarity right-hand side rc.
        auto direction = [&](const Blocks &rc, Blocks &dx, VectorXd &dy, Blocks &dz) {
            Blocks t(nb);
            for (int k = 0; k < nb; ++k) t[k] = rc[k] + wrdw[k];
            const VectorXd rhs = kernels::apply_constraints(pattern, t) - rp;
            dy = chol.solve(rhs);
            dz.resize(nb);
            dx.resize(nb);
            auto assemble = [&] {
                const Blocks atdy = kernels::apply_adjoint(pattern, dy, dims);
                for (int k = 0; k < nb; ++k) {
                    dz[k] = atdy[k] - rd[k];
                    dx[k] = rc[k] - sc[k].w * dz[k] * sc[k].w;
                    dx[k] = 0.5 * (dx[k] + dx[k].transpose()).eval();
                    dz[k] = 0.5 * (dz[k] + dz[k].transpose()).eval();
                }
            };
            assemble();
            // iterative refinement against the exact operator, A dx = rp
            for (int pass = 0; pass < options.refinement_steps; ++pass) {
                const VectorXd e = rp - kernels::apply_constraints(pattern, dx);
                if (e.norm() <= 1e-15 * bscale) break;
                dy -= chol.solve(e);
                assemble();
            }
        };
        auto steps = [&](const Blocks &dx, const Blocks &dz, double &ap, double &ad, Blocks &sdx, Blocks &sdz) {
            ap = ad = std::numeric_limits<double>::infinity();
            sdx.resize(nb);
            sdz.resize(nb);
            for (int k = 0; k < nb; ++k) {
                sdx[k] = sc[k].g_inv * dx[k] * sc[k].g_inv.transpose();
                sdz[k] = sc[k].g.transpose() * dz[k] * sc[k].g;
                ap = std::min(ap, max_step(sc[k].lambda, sdx[k]));
                ad = std::min(ad, max_step(sc[k].lambda, sdz[k]));
            }
        };

        Blocks rc(nb);
        Blocks dx, dz, sdx, sdz;
        VectorXd dy;
        double ap, ad;
        double sigma = 1.0;
        if (!center_only) {
            // predictor
            for (int k = 0; k < nb; ++k) rc[k] = -x[k];
            direction(rc, dx, dy, dz);
            steps(dx, dz, ap, ad, sdx, sdz);
            ap = std::min(1.0, ap);
            ad = std::min(1.0, ad);
            double mu_aff = 0.0;
            for (int k = 0; k < nb; ++k) mu_aff += ((x[k] + ap * dx[k]).cwiseProduct(z[k] + ad * dz[k])).sum();
            mu_aff /= n_total;
            sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);
        }

        // corrector, or a pure centering step once converged
        for (int k = 0; k < nb; ++k) {
            const VectorXd &lam = sc[k].lambda;
            MatrixXd r = MatrixXd::Zero(lam.size(), lam.size());
            if (!center_only) {
                const MatrixXd cross = sdx[k] * sdz[k];
                r = -0.5 * (cross + cross.transpose());
            }
            r.diagonal() += (sigma * mu * VectorXd::Ones(lam.size()) - lam.cwiseAbs2());
            MatrixXd mk(lam.size(), lam.size());
            for (Eigen::Index i = 0; i < lam.size(); ++i)
                for (Eigen::Index j = 0; j < lam.size(); ++j) mk(i, j) = 2.0 * r(i, j) / (lam[i] + lam[j]);
            rc[k] = sc[k].g * mk * sc[k].g.transpose();
        }
        direction(rc, dx, dy, dz);
        steps(dx, dz, ap, ad, sdx, sdz);
        ap = std::min(1.0, options.step_factor * ap);
        ad = std::min(1.0, options.step_factor * ad);

        for (int k = 0; k < nb; ++k) {
            x[k] += ap * dx[k];
            z[k] += ad * dz[k];
        }
        y += ad * dy;

        if (options.log) {
            options.log({iter, pobj, dobj, res.relative_gap, res.primal_infeasibility, res.dual_infeasibility, mu, ap,
                         ad});
        }
        if (ap < 1e-12 && ad < 1e-12) return finish_failed(Status::NumericalFailure, "step length collapsed");
    }
}

}  // namespace qcomb::ipm
