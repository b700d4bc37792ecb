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

#include "qcomb/covariant.hpp"

#include <cmath>
#include <numbers>

#include "qcomb/errors.hpp"
#include "qcomb/hermitian_sdp.hpp"

namespace qcomb {

namespace {

constexpr double kGroupTol = 1e-10;

bool is_permutation_row(const std::vector<int> &row, int n) {
    std::vector<char> seen(n, 0);
    for (int v : row) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

}  // namespace

FiniteGroupAction::FiniteGroupAction(std::vector<std::string> elements, std::vector<std::vector<int>> table,
                                     std::map<std::string, std::vector<Matrix>> rep, std::set<std::string> conjugate)
    : elements_(std::move(elements)), table_(std::move(table)), rep_(std::move(rep)), conjugate_(std::move(conjugate)) {
    const int n = static_cast<int>(elements_.size());
    if (n == 0) throw Error(ErrorKind::BadParameter, "group has no elements");
    if (static_cast<int>(table_.size()) != n) throw Error(ErrorKind::BadParameter, "composition table has wrong size");
    for (const auto &row : table_) {
        if (static_cast<int>(row.size()) != n || !is_permutation_row(row, n)) {
            throw Error(ErrorKind::BadParameter, "composition table rows must be permutations of the elements");
        }
    }
    for (int a = 0; a < n; ++a) {
        std::vector<int> col(n);
        for (int b = 0; b < n; ++b) col[b] = table_[b][a];
        if (!is_permutation_row(col, n)) throw Error(ErrorKind::BadParameter, "composition table is not a Latin square");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
                    throw Error(ErrorKind::BadParameter, "composition table is not associative");
                }
            }
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
        if (ok) identity_ = e;
    }
    if (identity_ < 0) throw Error(ErrorKind::BadParameter, "composition table has no identity");
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (table_[a][b] == identity_) inverse_[a] = b;
    {
        std::set<std::string> ids(elements_.begin(), elements_.end());
        if (static_cast<int>(ids.size()) != n) throw Error(ErrorKind::DuplicateLabel, "repeated group element id");
    }
    for (const auto &[label, mats] : rep_) {
        if (static_cast<int>(mats.size()) != n) {
            throw Error(ErrorKind::BadParameter, "representation on " + label + " needs one matrix per element");
        }
        const Eigen::Index d = mats.front().rows();
        for (const auto &u : mats) {
            if (u.rows() != d || u.cols() != d) throw Error(ErrorKind::BadParameter, "representation on " + label + " is not square of one size");
            if ((u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kGroupTol) {
                throw Error(ErrorKind::BadParameter, "representation on " + label + " is not unitary");
            }
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const Matrix lhs = mats[a] * mats[b];
                const Matrix &rhs = mats[table_[a][b]];
                const Complex omega = (rhs.adjoint() * lhs).trace() / static_cast<double>(d);
                if (std::abs(std::abs(omega) - 1.0) > kGroupTol || (lhs - omega * rhs).cwiseAbs().maxCoeff() > kGroupTol) {
                    throw Error(ErrorKind::BadParameter,
                                "representation on " + label + " is not a homomorphism up to phase at (" +
                                    elements_[a] + ", " + elements_[b] + ")");
                }
            }
    }
    for (const auto &label : conjugate_) {
        if (!rep_.count(label)) throw Error(ErrorKind::UnknownLabel, "conjugate flag on " + label + " without a representation");
    }
}

int FiniteGroupAction::index_of(const std::string &id) const {
    for (std::size_t k = 0; k < elements_.size(); ++k)
        if (elements_[k] == id) return static_cast<int>(k);
    return -1;
}

Matrix FiniteGroupAction::unitary(const std::vector<SystemLabel> &factors, int g) const {
    Matrix u = Matrix::Identity(1, 1);
    for (const auto &f : factors) {
        Matrix uf;
        const auto it = rep_.find(f.id);
        if (it == rep_.end()) {
            uf = Matrix::Identity(f.dim, f.dim);
        } else {
            uf = it->second.at(g);
            if (uf.rows() != f.dim) {
                throw Error(ErrorKind::ShapeMismatch, "representation on " + f.id + " has dimension " +
                                                          std::to_string(uf.rows()) + " but the factor has " +
                                                          std::to_string(f.dim));
            }
            if (conjugate_.count(f.id)) uf = uf.conjugate().eval();
        }
        u = kernels::kron(u, uf);
    }
    return u;
}

LabeledOperator FiniteGroupAction::act(const LabeledOperator &a, int g) const {
    const Matrix u = unitary(a.factors(), g);
    return {a.factors(), u * a.matrix() * u.adjoint()};
}

Matrix phase_unitary(int levels, double phi) {
    if (levels < 1) throw Error(ErrorKind::BadDimension, "phase shift needs at least one level");
    Matrix u = Matrix::Zero(levels, levels);
    for (int n = 0; n < levels; ++n) u(n, n) = std::polar(1.0, n * phi);
    return u;
}

FiniteGroupAction cyclic_phase_action(const std::vector<std::string> &labels, int levels, int order,
                                      const std::set<std::string> &conjugate) {
    if (order < 1) throw Error(ErrorKind::BadParameter, "group order must be positive");
    std::vector<std::string> elements;
    std::vector<std::vector<int>> table(order, std::vector<int>(order));
    std::vector<Matrix> mats;
    for (int a = 0; a < order; ++a) {
        elements.push_back(std::to_string(a));
        for (int b = 0; b < order; ++b) table[a][b] = (a + b) % order;
        mats.push_back(phase_unitary(levels, 2.0 * std::numbers::pi * a / order));
    }
    std::map<std::string, std::vector<Matrix>> rep;
    for (const auto &l : labels) rep[l] = mats;
    return {std::move(elements), std::move(table), std::move(rep), conjugate};
}

LabeledOperator twirl(const LabeledOperator &a, const FiniteGroupAction &action) {
    Matrix acc = Matrix::Zero(a.dim(), a.dim());
    for (std::size_t g = 0; g < action.size(); ++g) {
        const Matrix u = action.unitary(a.factors(), static_cast<int>(g));
        acc += u * a.matrix() * u.adjoint();
    }
    return {a.factors(), acc / static_cast<double>(action.size())};
}

EstimationProblem orbit_problem(const QuantumComb &seed, const FiniteGroupAction &action, const Eigen::MatrixXd &payoff) {
    std::vector<QuantumComb> combs;
    for (std::size_t g = 0; g < action.size(); ++g) {
        combs.push_back(QuantumComb(seed.space(), action.act(seed.op(), static_cast<int>(g))));
    }
    const std::size_t n = action.size();
    return make_shifted_problem(seed.space(), action.elements(), std::vector<double>(n, 1.0 / n), std::move(combs),
                                payoff);
}

namespace {

struct Normalization {
    Matrix a;
    double value;
};

// max q subject to R = P + q S0, P >= 0, R invariant, Re Tr[A R] = value for
// every normalization row.
QmaxResult qmax_program(const LabeledOperator &s0, const std::vector<Normalization> &rows,
                        const FiniteGroupAction &action, const SolveOptions &options) {
    const int d = static_cast<int>(s0.dim());
    HermitianSdp sdp;
    const int qb = sdp.add_block(1);
    const int pb = sdp.add_block(d);
    sdp.objective[qb] = Matrix::Ones(1, 1);
    auto add = [&](const Matrix &a, double value) {
        const double on_s0 = (a * s0.matrix()).trace().real();
        sdp.add_constraint({{pb, a}, {qb, Matrix::Constant(1, 1, on_s0)}}, value);
    };
    for (const auto &r : rows) add(r.a, r.value);
    for (int k = 0; k < d * d; ++k) {
        const LabeledOperator e(s0.factors(), hermitian_basis_element(d, k));
        const Matrix a = (e - twirl(e, action)).matrix();
        if (a.cwiseAbs().maxCoeff() > 1e-12) add(a, 0.0);
    }
    ipm::Options io;
    io.tol = options.tol;
    io.max_iter = options.max_iter;
    io.log = options.log;
    const HermitianSolution hs = solve_hermitian(sdp, io);
    require_optimal(hs.raw);
    QmaxResult out;
    out.q_max = hs.x[qb](0, 0).real();
    out.optimizer = (LabeledOperator(s0.factors(), hs.x[pb]) + s0 * Complex(out.q_max)).hermitian_part();
    out.gap = std::abs(hs.raw.dual_objective - hs.raw.primal_objective);
    out.iterations = hs.raw.iterations;
    return out;
}

}  // namespace

QmaxResult qmax_state(const LabeledOperator &rho0, const FiniteGroupAction &action, const SolveOptions &options) {
    if (!rho0.is_hermitian()) throw Error(ErrorKind::NotAState, "state is not Hermitian");
    if (std::abs(rho0.trace() - Complex(1.0)) > kDefaultValidationTol) throw Error(ErrorKind::NotAState, "state trace is not 1");
    if (min_eig(rho0.hermitian_part()) < -kDefaultValidationTol) throw Error(ErrorKind::NotAState, "state is not positive");
    const Eigen::Index d = rho0.dim();
    return qmax_program(rho0.hermitian_part(), {{Matrix::Identity(d, d), 1.0}}, action, options);
}

QmaxResult qmax_comb(const CombSpace &space, const LabeledOperator &s0, const FiniteGroupAction &action,
                     const SolveOptions &options) {
    LabeledOperator s;
    try {
        s = QuantumComb(space, s0).op();
    } catch (const Error &e) {
        throw Error(ErrorKind::InvalidComb, std::string("reference operator is not a comb: ") + e.what());
    }
    std::vector<Normalization> rows;
    rows.push_back({Matrix::Identity(s.dim(), s.dim()), static_cast<double>(space.input_dimension())});
    // With Q_n = Tr_{steps > n} R, the comb conditions read
    // Tr_out(n) Q_n = I_in(n) (x) Tr_{out(n), in(n)} Q_n / d_in(n).
    for (std::size_t n = 1; n <= space.size(); ++n) {
        const auto ylabels = space.xi_labels(n);
        const SystemLabel &in = space.step(n).in;
        const int dy = static_cast<int>(LabeledOperator::identity(ylabels).dim());
        for (int k = 0; k < dy * dy; ++k) {
            const LabeledOperator e(ylabels, hermitian_basis_element(dy, k));
            LabeledOperator h = e - embed_identity(partial_trace(e, {in.id}), in, ylabels.size() - 1) *
                                        Complex(1.0 / in.dim);
            if (h.max_abs() < 1e-12) continue;
            std::vector<SystemLabel> rest{space.step(n).out};
            for (std::size_t m = n + 1; m <= space.size(); ++m) {
                rest.push_back(space.step(m).out);
                rest.push_back(space.step(m).in);
            }
            const LabeledOperator full = align_to(tensor(h, LabeledOperator::identity(rest)), s);
            rows.push_back({full.matrix(), 0.0});
        }
    }
    return qmax_program(s, rows, action, options);
}

CovariantResult covariant_gamma(const EstimationProblem &p, const FiniteGroupAction &action,
                                const SolveOptions &options) {
    const std::size_t n = p.size();
    if (action.elements() != p.labels()) {
        throw Error(ErrorKind::NotCovariant, "problem labels must be the group elements in order");
    }
    for (double w : p.prior()) {
        if (std::abs(w - 1.0 / static_cast<double>(n)) > 1e-12) throw Error(ErrorKind::NotCovariant, "prior is not uniform");
    }
    const auto &g = p.payoff();
    const auto &table = action.table();
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t xh = 0; xh < n; ++xh)
            for (std::size_t x = 0; x < n; ++x) {
                if (std::abs(g(table[y][xh], table[y][x]) - g(xh, x)) > 1e-12 * (1.0 + std::abs(g(xh, x)))) {
                    throw Error(ErrorKind::NotLeftInvariant, "payoff changes under left translation by " +
                                                                 action.elements()[y]);
                }
            }
    const int e = action.identity();
    const LabeledOperator &re = p.combs()[e].op();
    const double cov_tol = 1e-8 * (1.0 + re.max_abs());
    for (std::size_t x = 0; x < n; ++x) {
        if (max_abs_diff(action.act(re, static_cast<int>(x)), p.combs()[x].op()) > cov_tol) {
            throw Error(ErrorKind::NotCovariant, "comb of " + p.labels()[x] + " is not the translate of the identity comb");
        }
    }

    CovariantResult out;
    out.payoff_shift = p.payoff_shift();
    std::vector<LabeledOperator> ops;
    std::vector<double> weights;
    for (std::size_t x = 0; x < n; ++x) {
        ops.push_back(p.combs()[x].op());
        weights.push_back(p.prior()[x] * g(e, x));
        out.gamma_0 += weights.back();
    }
    if (!(out.gamma_0 > 0.0)) {
        out.q_max = 1.0;
        out.sigma_0 = re;
        out.invariant = twirl(re, action);
        return out;
    }
    for (auto &w : weights) w /= out.gamma_0;
    out.sigma_0 = weighted_sum(ops, weights);
    const QmaxResult q = qmax_comb(p.space(), out.sigma_0, action, options);
    out.q_max = q.q_max;
    out.invariant = q.optimizer;
    out.gamma_max = out.gamma_0 / out.q_max;
    return out;
}

PhaseOptimum phase_estimation_optimum(int levels) {
    if (levels < 2) throw Error(ErrorKind::BadDimension, "phase estimation needs at least 2 levels");
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(levels, levels);
    for (int k = 0; k + 1 < levels; ++k) t(k, k + 1) = t(k + 1, k) = 0.5;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    PhaseOptimum out;
    out.lambda_top = es.eigenvalues()[levels - 1];
    out.c_min = 2.0 * (1.0 - out.lambda_top);
    Eigen::VectorXd v = es.eigenvectors().col(levels - 1);
    if (v.sum() < 0) v = -v;
    out.coefficients = v.cwiseAbs() / v.norm();
    const double s = std::sin(std::numbers::pi / (2.0 * levels));
    out.printed_c_min = 4.0 * s * s;
    out.printed_formula_agrees = std::abs(out.printed_c_min - out.c_min) <= 1e-9;
    return out;
}

TwoPhaseResult two_phase_correlated(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::BadParameter, "p must lie in [0, 1]");
    TwoPhaseResult out;
    out.gamma_max = std::max(p, 1.0 - p) / 2.0;
    out.optimal_state = Eigen::VectorXcd::Zero(4);
    const double r = std::numbers::sqrt2 / 2.0;
    if (p > 0.5) {
        out.optimal_state(0) = out.optimal_state(3) = r;
    } else if (p < 0.5) {
        out.optimal_state(1) = out.optimal_state(2) = r;
    } else {
        out.degenerate = true;
        out.optimal_state.setConstant(0.5);
    }
    return out;
}

double two_phase_payoff(double p, double xh1, double xh2, double x1, double x2) {
    return p * std::cos(xh1 + xh2 - x1 - x2) + (1.0 - p) * std::cos(xh1 - xh2 - x1 + x2);
}

namespace {

LabeledOperator unitary_choi(const Matrix &u, const SystemLabel &in, const SystemLabel &out) {
    return choi_of_channel({u}, in, out);
}

}  // namespace

EstimationProblem two_phase_problem(double p, int grid, TwoPhaseModel model) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::BadParameter, "p must lie in [0, 1]");
    if (grid < 2) throw Error(ErrorKind::BadParameter, "grid needs at least 2 points");
    const auto phases = phase_grid(grid);
    std::vector<std::string> labels;
    std::vector<QuantumComb> combs;
    const SystemLabel in1{"in1", 2}, out1{"out1", 2}, in2{"in2", 2}, out2{"out2", 2};
    const SystemLabel in{"in", 4}, out{"out", 4};
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            labels.push_back(std::to_string(i) + "," + std::to_string(j));
            const Matrix u1 = phase_unitary(2, phases[i]), u2 = phase_unitary(2, phases[j]);
            if (model == TwoPhaseModel::Sequential) {
                combs.push_back(comb_of_memoryless_sequence({unitary_choi(u1, in1, out1), unitary_choi(u2, in2, out2)}));
            } else {
                const LabeledOperator c = unitary_choi(kernels::kron(u1, u2), in, out);
                combs.push_back(QuantumComb(CombSpace(std::vector<Step>{{in, out}}), c));
            }
        }
    const std::size_t n = labels.size();
    Eigen::MatrixXd g(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            g(a, b) = two_phase_payoff(p, phases[a / grid], phases[a % grid], phases[b / grid], phases[b % grid]);
    CombSpace space = combs.front().space();
    return make_shifted_problem(std::move(space), std::move(labels), std::vector<double>(n, 1.0 / n), std::move(combs),
                                g);
}

namespace {

FiniteGroupAction two_phase_action(int grid, const std::string &label) {
    const int n = grid * grid;
    std::vector<std::string> elements;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    std::vector<Matrix> mats;
    const auto phases = phase_grid(grid);
    for (int a = 0; a < n; ++a) {
        elements.push_back(std::to_string(a / grid) + "," + std::to_string(a % grid));
        for (int b = 0; b < n; ++b) table[a][b] = ((a / grid + b / grid) % grid) * grid + (a % grid + b % grid) % grid;
        mats.push_back(kernels::kron(phase_unitary(2, phases[a / grid]), phase_unitary(2, phases[a % grid])));
    }
    return {std::move(elements), std::move(table), {{label, mats}}};
}

}  // namespace

Eigen::VectorXcd two_phase_input_state(const SdpSolution &parallel_solution, int grid) {
    if (!parallel_solution.tester) throw Error(ErrorKind::BadParameter, "solution carries no tester");
    const auto &xi = parallel_solution.tester->xi_chain();
    if (xi.size() != 1 || xi[0].dim() != 4) throw Error(ErrorKind::ShapeMismatch, "expected a parallel two-phase solution");
    const LabeledOperator rho(xi[0].factors(), xi[0].matrix().transpose());
    const LabeledOperator inv = twirl(rho, two_phase_action(grid, rho.factors()[0].id));
    Eigen::VectorXcd e(4);
    for (int n = 0; n < 4; ++n) e(n) = std::sqrt(std::max(inv.matrix()(n, n).real(), 0.0));
    return e / e.norm();
}

Tester two_phase_tester(const Eigen::VectorXcd &input, int grid) {
    if (input.size() != 4) throw Error(ErrorKind::ShapeMismatch, "two-phase input must have 4 components");
    if (grid < 2) throw Error(ErrorKind::BadParameter, "grid needs at least 2 points");
    const SystemLabel in{"in", 4}, out{"out", 4};
    const CombSpace space(std::vector<Step>{{in, out}});
    const Eigen::VectorXcd e = input / input.norm();
    const Matrix rho_t = (e * e.adjoint()).transpose();
    const Eigen::VectorXcd eta = Eigen::VectorXcd::Ones(4);
    const auto phases = phase_grid(grid);
    std::vector<Outcome> outcomes;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const Eigen::VectorXcd v = kernels::kron(phase_unitary(2, phases[i]), phase_unitary(2, phases[j])) * eta;
            const Matrix povm = v * v.adjoint() / static_cast<double>(grid * grid);
            outcomes.push_back({std::to_string(i) + "," + std::to_string(j),
                                LabeledOperator({out, in}, kernels::kron(povm, rho_t))});
        }
    return Tester(space, std::move(outcomes));
}

EstimationProblem phase_estimation_problem(int levels, int grid) {
    if (levels < 2) throw Error(ErrorKind::BadDimension, "phase estimation needs at least 2 levels");
    if (grid == 0) grid = 2 * levels + 2;
    if (grid < 2 * levels) {
        throw Error(ErrorKind::BadParameter, "grid of " + std::to_string(grid) + " points is below the exact size " +
                                                 std::to_string(2 * levels));
    }
    const auto phases = phase_grid(grid);
    const SystemLabel in{"in", levels}, out{"out", levels};
    std::vector<std::string> labels;
    std::vector<QuantumComb> combs;
    for (int k = 0; k < grid; ++k) {
        labels.push_back(std::to_string(k));
        combs.push_back(QuantumComb(CombSpace(std::vector<Step>{{in, out}}),
                                    unitary_choi(phase_unitary(levels, phases[k]), in, out)));
    }
    Eigen::MatrixXd g(grid, grid);
    for (int a = 0; a < grid; ++a)
        for (int b = 0; b < grid; ++b) g(a, b) = -2.0 * (1.0 - std::cos(phases[a] - phases[b]));
    CombSpace space = combs.front().space();
    return make_shifted_problem(std::move(space), std::move(labels), std::vector<double>(grid, 1.0 / grid),
                                std::move(combs), g);
}

SumOfPhases sum_of_phases(int levels, int copies, int printed_m) {
    if (levels < 2 || copies < 1) throw Error(ErrorKind::BadParameter, "need at least 2 levels and 1 copy");
    if (printed_m < 0) throw Error(ErrorKind::BadParameter, "M must be positive");
    const PhaseOptimum single = phase_estimation_optimum(levels);
    SumOfPhases out;
    out.c_entangled = single.c_min;
    out.c_product = 2.0 * (1.0 - std::pow(1.0 - single.c_min / 2.0, copies));
    out.ratio = out.c_product / out.c_entangled;
    out.printed_m = printed_m > 0 ? printed_m : levels;
    const double s = std::sin(std::numbers::pi / (2.0 * out.printed_m));
    out.printed_c_product = 2.0 * (1.0 - std::pow(1.0 - 2.0 * s * s, copies));
    return out;
}

}  // namespace qcomb
