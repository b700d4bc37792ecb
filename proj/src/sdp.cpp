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

#include "qcomb/sdp.hpp"

#include <cmath>

#include "qcomb/errors.hpp"

namespace qcomb {

namespace {

LabeledOperator canonical_payoff(const LabeledOperator &g, const CombSpace &space) {
    return align_to(g, LabeledOperator::identity(space.labels()));
}

LabeledOperator zeros(const std::vector<SystemLabel> &labels) {
    return LabeledOperator::identity(labels) * Complex(0.0);
}

}  // namespace

StandardSdp::StandardSdp(EstimationProblem problem) : problem_(std::move(problem)) {
    for (const auto &g : qcomb::payoff_operators(problem_)) g_.push_back(canonical_payoff(g, problem_.space()));
}

std::vector<int> StandardSdp::block_dims() const {
    std::vector<int> dims;
    for (std::size_t n = 1; n <= steps(); ++n) {
        int d = 1;
        for (const auto &l : space().xi_labels(n)) d *= l.dim;
        dims.push_back(d);
    }
    for (std::size_t x = 0; x < outcomes(); ++x) dims.push_back(static_cast<int>(space().dimension()));
    return dims;
}

std::vector<int> StandardSdp::level_dims() const {
    std::vector<int> dims;
    for (std::size_t j = 0; j <= steps(); ++j) {
        int d = 1;
        for (const auto &l : space().history(j)) d *= l.dim;
        dims.push_back(d);
    }
    return dims;
}

TesterBlocks StandardSdp::objective() const {
    TesterBlocks t = zero_primal();
    t.t = g_;
    return t;
}

DualState StandardSdp::rhs() const {
    DualState k = zero_dual();
    k.levels[0] = LabeledOperator::scalar(1.0);
    return k;
}

TesterBlocks StandardSdp::zero_primal() const {
    TesterBlocks t;
    for (std::size_t n = 1; n <= steps(); ++n) t.xi.push_back(zeros(space().xi_labels(n)));
    for (std::size_t x = 0; x < outcomes(); ++x) t.t.push_back(zeros(space().labels()));
    return t;
}

DualState StandardSdp::zero_dual() const {
    DualState s;
    for (std::size_t j = 0; j <= steps(); ++j) s.levels.push_back(zeros(space().history(j)));
    return s;
}

DualState StandardSdp::apply(const TesterBlocks &t) const {
    const std::size_t N = steps();
    DualState r;
    r.levels.push_back(partial_trace(t.xi[0], {space().step(1).in.id}));
    for (std::size_t j = 1; j < N; ++j) {
        LabeledOperator level = partial_trace(t.xi[j], {space().step(j + 1).in.id});
        level -= embed_identity(t.xi[j - 1], space().step(j).out, 2 * (j - 1));
        r.levels.push_back(std::move(level));
    }
    LabeledOperator top = zeros(space().labels());
    for (const auto &tx : t.t) top += tx;
    top -= embed_identity(t.xi[N - 1], space().step(N).out, 2 * (N - 1));
    r.levels.push_back(std::move(top));
    return r;
}

TesterBlocks StandardSdp::adjoint(const DualState &s) const {
    const std::size_t N = steps();
    TesterBlocks m;
    for (std::size_t n = 1; n <= N; ++n) {
        LabeledOperator block = embed_identity(s.levels[n - 1], space().step(n).in, 2 * (n - 1));
        block -= partial_trace(s.levels[n], {space().step(n).out.id});
        m.xi.push_back(std::move(block));
    }
    for (std::size_t x = 0; x < outcomes(); ++x) m.t.push_back(s.levels[N]);
    return m;
}

TesterBlocks StandardSdp::dual_slack(const DualState &s) const {
    TesterBlocks m = adjoint(s);
    for (std::size_t x = 0; x < outcomes(); ++x) m.t[x] -= g_[x];
    return m;
}

double StandardSdp::primal_objective(const TesterBlocks &t) const {
    double v = 0.0;
    for (std::size_t x = 0; x < outcomes(); ++x) v += hs_inner(t.t[x], g_[x]).real();
    return v;
}

TesterBlocks StandardSdp::uniform_tester() const {
    TesterBlocks t;
    t.xi = maximally_mixed_xi_chain(space());
    const std::size_t N = steps();
    const LabeledOperator total = embed_identity(t.xi[N - 1], space().step(N).out, 2 * (N - 1));
    for (std::size_t x = 0; x < outcomes(); ++x) t.t.push_back(total * Complex(1.0 / outcomes()));
    return t;
}

std::vector<std::pair<int, Matrix>> StandardSdp::adjoint_of_level(std::size_t level, const LabeledOperator &e) const {
    const std::size_t N = steps();
    std::vector<std::pair<int, Matrix>> out;
    if (level < N) {
        out.emplace_back(static_cast<int>(level),
                         embed_identity(e, space().step(level + 1).in, 2 * level).matrix());
    }
    if (level >= 1) {
        out.emplace_back(static_cast<int>(level - 1), -partial_trace(e, {space().step(level).out.id}).matrix());
    }
    if (level == N) {
        for (std::size_t x = 0; x < outcomes(); ++x) out.emplace_back(static_cast<int>(N + x), e.matrix());
    }
    return out;
}

HermitianSdp StandardSdp::to_hermitian() const {
    HermitianSdp h;
    for (int d : block_dims()) h.add_block(d);
    for (std::size_t x = 0; x < outcomes(); ++x) h.objective[steps() + x] = g_[x].matrix();
    const auto dims = level_dims();
    for (std::size_t j = 0; j <= steps(); ++j) {
        const auto labels = space().history(j);
        const int d = dims[j];
        for (int k = 0; k < d * d; ++k) {
            const LabeledOperator e(labels, hermitian_basis_element(d, k));
            h.add_constraint(adjoint_of_level(j, e), j == 0 ? 1.0 : 0.0);
        }
    }
    return h;
}

Eigen::VectorXd StandardSdp::dual_coordinates(const DualState &s) const {
    const auto dims = level_dims();
    Eigen::Index total = 0;
    for (int d : dims) total += Eigen::Index(d) * d;
    Eigen::VectorXd y(total);
    Eigen::Index at = 0;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        const auto c = hermitian_coordinates(s.levels[j].matrix());
        y.segment(at, c.size()) = c;
        at += c.size();
    }
    return y;
}

DualState StandardSdp::dual_from_coordinates(const Eigen::VectorXd &y) const {
    const auto dims = level_dims();
    DualState s;
    Eigen::Index at = 0;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        const Eigen::Index len = Eigen::Index(dims[j]) * dims[j];
        s.levels.emplace_back(space().history(j), from_hermitian_coordinates(y.segment(at, len), dims[j]));
        at += len;
    }
    return s;
}

std::vector<Matrix> StandardSdp::primal_matrices(const TesterBlocks &t) const {
    std::vector<Matrix> out;
    for (const auto &x : t.xi) out.push_back(x.matrix());
    for (const auto &x : t.t) out.push_back(x.matrix());
    return out;
}

TesterBlocks StandardSdp::primal_from_matrices(const std::vector<Matrix> &blocks) const {
    TesterBlocks t;
    for (std::size_t n = 1; n <= steps(); ++n) t.xi.emplace_back(space().xi_labels(n), blocks[n - 1]);
    for (std::size_t x = 0; x < outcomes(); ++x) t.t.emplace_back(space().labels(), blocks[steps() + x]);
    return t;
}

StandardSdp build_primal(const EstimationProblem &p) { return StandardSdp(p); }

DualProgram build_dual(const EstimationProblem &p) { return DualProgram{StandardSdp(p)}; }

double DualProgram::margin(const DualState &s) const {
    const TesterBlocks m = sdp.dual_slack(s);
    double lo = std::numeric_limits<double>::infinity();
    for (const auto &b : m.xi) lo = std::min(lo, min_eig(b.hermitian_part()));
    for (const auto &b : m.t) lo = std::min(lo, min_eig(b.hermitian_part()));
    return lo;
}

DualState slater_point(const EstimationProblem &p, double strict_margin) {
    const StandardSdp sdp(p);
    const auto &space = p.space();
    const std::size_t N = space.size();
    double c = p.max_payoff() > 0.0 ? p.max_payoff() : 1.0;
    c *= static_cast<double>(space.input_dimension());
    const auto eye = LabeledOperator::identity(space.labels());
    for (int guard = 0;; ++guard) {
        double lo = std::numeric_limits<double>::infinity();
        for (const auto &g : sdp.payoff_operators()) lo = std::min(lo, min_eig((eye * Complex(c) - g).hermitian_part()));
        if (lo >= strict_margin || guard > 60) break;
        c *= 2.0;
    }
    DualState s = sdp.zero_dual();
    s.levels[N] = eye * Complex(c);
    for (std::size_t n = N; n >= 1; --n) {
        const auto &step = space.step(n);
        s.levels[n - 1] = partial_trace(s.levels[n], {step.out.id, step.in.id}) * Complex(2.0);
    }
    return s;
}

DualState tighten(const StandardSdp &sdp, const DualState &s) {
    DualState t = s;
    const auto &space = sdp.space();
    for (std::size_t k = 1; k <= sdp.steps(); ++k) {
        const auto &step = space.step(k);
        LabeledOperator delta = embed_identity(t.levels[k - 1], step.in, 2 * (k - 1));
        delta -= partial_trace(t.levels[k], {step.out.id});
        t.levels[k] += embed_identity(delta, step.out, 2 * (k - 1)) * Complex(1.0 / step.out.dim);
        t.levels[k] = t.levels[k].hermitian_part();
    }
    return t;
}

CertificateReport certify_dual(double lambda, const QuantumComb &r, const EstimationProblem &p, double tol) {
    if (!(r.space() == p.space())) throw Error(ErrorKind::InvalidComb, "certificate comb lives on another space");
    try {
        validate_comb(r, std::max(tol, kDefaultValidationTol));
    } catch (const Error &e) {
        throw Error(ErrorKind::InvalidComb, e.what());
    }
    CertificateReport rep;
    const LabeledOperator scaled = r.op() * Complex(lambda);
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (const auto &g : payoff_operators(p)) {
        const double m = min_eig((scaled - g).hermitian_part());
        rep.margins.push_back(m);
        rep.min_margin = std::min(rep.min_margin, m);
    }
    rep.ok = rep.min_margin >= -tol;
    rep.bound = lambda - p.payoff_shift();
    return rep;
}

void require_optimal(const ipm::Result &r) {
    if (r.status == ipm::Status::Optimal) return;
    const ErrorKind kind = r.status == ipm::Status::MaxIterations ? ErrorKind::MaxIterations
                           : r.status == ipm::Status::Infeasible  ? ErrorKind::Infeasible
                                                                  : ErrorKind::NumericalFailure;
    throw Error(kind, r.message + " after " + std::to_string(r.iterations) + " iterations (relative gap " +
                          format_number(r.relative_gap) + ", primal infeasibility " +
                          format_number(r.primal_infeasibility) + ", dual infeasibility " +
                          format_number(r.dual_infeasibility) + ")");
}

SdpSolution solve(const EstimationProblem &p, const SolveOptions &options) {
    if (!(options.tol > 0.0) || options.max_iter < 1) {
        throw Error(ErrorKind::BadParameter, "tol must be positive and max_iter at least 1");
    }
    const StandardSdp sdp(p);
    std::size_t total = 0;
    for (int d : sdp.block_dims()) total += static_cast<std::size_t>(d);
    if (total > max_dimension()) {
        throw Error(ErrorKind::DimensionCap, "total block dimension " + std::to_string(total) + " exceeds " +
                                                 std::to_string(max_dimension()));
    }
    const HermitianSdp h = sdp.to_hermitian();
    const std::vector<Matrix> x0 = sdp.primal_matrices(sdp.uniform_tester());
    const Eigen::VectorXd y0 = sdp.dual_coordinates(slater_point(p));
    ipm::Options io;
    io.tol = options.tol;
    io.max_iter = options.max_iter;
    io.log = options.log;
    const HermitianSolution hs = solve_hermitian(h, io, &x0, &y0);

    SdpSolution sol;
    sol.status = hs.raw.status;
    sol.iterations = hs.raw.iterations;
    sol.payoff_shift = p.payoff_shift();
    require_optimal(hs.raw);

    const double check_tol = 10.0 * std::max(options.tol, 1e-9);
    const TesterBlocks t = sdp.primal_from_matrices(hs.x);
    std::vector<Outcome> outcomes;
    for (std::size_t x = 0; x < p.size(); ++x) outcomes.push_back({p.labels()[x], t.t[x]});
    try {
        sol.tester.emplace(p.space(), std::move(outcomes), check_tol);
    } catch (const Error &e) {
        throw Error(ErrorKind::NumericalFailure, std::string("optimal tester failed validation: ") + e.what());
    }
    sol.gamma_primal = sdp.primal_objective(t) - p.payoff_shift();
    sol.gamma_dual = hs.raw.dual_objective - p.payoff_shift();
    sol.gap = std::abs(sol.gamma_dual - sol.gamma_primal);
    sol.relative_gap = hs.raw.relative_gap;

    sol.dual = tighten(sdp, sdp.dual_from_coordinates(hs.y));
    double lambda = sol.dual.objective();
    const std::size_t N = sdp.steps();
    LabeledOperator scaled = sol.dual.levels[N];  // lambda R
    if (!(lambda > 1e-300)) {
        lambda = 0.0;
        scaled = zeros(p.space().labels());
    }
    double worst = min_eig(scaled.hermitian_part());
    for (const auto &g : sdp.payoff_operators()) worst = std::min(worst, min_eig((scaled - g).hermitian_part()));
    if (worst < 0.0 || lambda == 0.0) {
        // Mix in the maximally mixed comb: lambda R + |m| I is
        // (lambda + |m| d_out) times a convex combination of combs.
        const double m = lambda == 0.0 ? std::max(-worst, 0.0) + 1e-300 : -worst;
        sol.lambda_repair = m * static_cast<double>(p.space().output_dimension());
        scaled += LabeledOperator::identity(p.space().labels()) * Complex(m);
        lambda += sol.lambda_repair;
    }
    sol.lambda = lambda;
    try {
        sol.comb_certificate.emplace(p.space(), scaled * Complex(1.0 / lambda), check_tol);
    } catch (const Error &e) {
        throw Error(ErrorKind::NumericalFailure, std::string("dual certificate is not a comb: ") + e.what());
    }
    const CertificateReport rep = certify_dual(lambda, *sol.comb_certificate, p, options.certificate_tol);
    sol.certificate_margin = rep.min_margin;
    sol.certified = rep.ok && sol.gap <= options.tol * (1.0 + std::abs(sol.gamma_primal)) * 10.0;
    sol.message = hs.raw.message;
    return sol;
}

namespace {

double slackness(const std::vector<Matrix> &povm, const std::vector<Matrix> &slacks) {
    Matrix r = Matrix::Zero(slacks.front().rows(), slacks.front().cols());
    for (std::size_t x = 0; x < povm.size(); ++x) r += povm[x] * slacks[x];
    return r.cwiseAbs().maxCoeff();
}

}  // namespace

YklResult yuen_kennedy_lax(const std::vector<Matrix> &states, const std::vector<double> &priors,
                           const SolveOptions &options) {
    if (states.empty()) throw Error(ErrorKind::InvalidProblem, "no states");
    const int d = static_cast<int>(states.front().rows());
    const EstimationProblem p = state_problem({"s", d}, states, priors, delta_payoff(states.size()));
    YklResult out;
    out.solution = solve(p, options);
    out.p_succ = out.solution.gamma_primal;
    const LabeledOperator lam = out.solution.comb_certificate->op() * Complex(out.solution.lambda);
    out.lambda_op = partial_trace(lam, {"s.pre"}).matrix();
    std::vector<Matrix> slacks;
    for (std::size_t x = 0; x < states.size(); ++x) {
        out.povm.push_back(partial_trace(out.solution.tester->outcomes()[x].op, {"s.pre"}).matrix());
        slacks.push_back(out.lambda_op - priors[x] * states[x]);
    }
    out.slackness_residual = slackness(out.povm, slacks);
    return out;
}

}  // namespace qcomb
