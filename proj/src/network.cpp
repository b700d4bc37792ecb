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

#include "qcomb/network.hpp"

#include <cmath>
#include <set>

#include "qcomb/errors.hpp"

namespace qcomb {

CombSpace::CombSpace(std::vector<Step> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) throw Error(ErrorKind::InvalidComb, "a comb space needs at least one step");
    std::set<std::string> seen;
    for (const auto &s : steps_) {
        for (const auto *label : {&s.in, &s.out}) {
            if (label->dim < 1) throw Error(ErrorKind::BadDimension, "label '" + label->id + "' has dimension < 1");
            if (!seen.insert(label->id).second) {
                throw Error(ErrorKind::DuplicateLabel, "label '" + label->id + "' used twice in comb space");
            }
        }
    }
}

std::vector<SystemLabel> CombSpace::history(std::size_t n) const {
    std::vector<SystemLabel> out;
    out.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(steps_[i].out);
        out.push_back(steps_[i].in);
    }
    return out;
}

std::vector<SystemLabel> CombSpace::xi_labels(std::size_t n) const {
    auto out = history(n - 1);
    out.push_back(steps_.at(n - 1).in);
    return out;
}

long CombSpace::dimension() const { return input_dimension() * output_dimension(); }

long CombSpace::input_dimension() const {
    long d = 1;
    for (const auto &s : steps_) d *= s.in.dim;
    return d;
}

long CombSpace::output_dimension() const {
    long d = 1;
    for (const auto &s : steps_) d *= s.out.dim;
    return d;
}

CombSpace CombSpace::concat(const CombSpace &a, const CombSpace &b) {
    auto steps = a.steps();
    steps.insert(steps.end(), b.steps().begin(), b.steps().end());
    return CombSpace(std::move(steps));
}

namespace {

LabeledOperator canonical(const CombSpace &space, const LabeledOperator &op) {
    LabeledOperator ref = LabeledOperator::identity(space.labels());
    try {
        return align_to(op, ref);
    } catch (const Error &e) {
        throw Error(ErrorKind::ShapeMismatch, std::string("operator does not live on the comb space: ") + e.what());
    }
}

void require_psd(const LabeledOperator &op, double tol, const std::string &what) {
    if (!op.is_hermitian(std::max(tol, default_herm_tol(op.matrix())))) {
        throw Error(ErrorKind::NotPSD, what + " is not Hermitian");
    }
    const double lo = min_eig(op.hermitian_part());
    if (lo < -tol) throw Error(ErrorKind::NotPSD, what + " has eigenvalue " + format_number(lo));
}

}  // namespace

std::vector<LabeledOperator> validate_comb(const CombSpace &space, const LabeledOperator &op, double tol) {
    LabeledOperator current = canonical(space, op);
    require_psd(current, tol, "comb operator");
    const std::size_t n_steps = space.size();
    std::vector<LabeledOperator> chain(n_steps);
    for (std::size_t n = n_steps; n >= 1; --n) {
        const Step &step = space.step(n);
        const LabeledOperator reduced = partial_trace(current, {step.out.id});
        LabeledOperator lower = n > 1 ? partial_trace(reduced, {step.in.id}) * Complex(1.0 / step.in.dim)
                                      : LabeledOperator::scalar(1.0);
        const LabeledOperator expected = embed_identity(lower, step.in, lower.factors().size());
        const double residual = max_abs_diff(reduced, expected);
        if (!(residual <= tol)) {
            throw NormalizationViolation(static_cast<int>(n), residual,
                                         "partial trace over '" + step.out.id + "' is not identity on '" +
                                             step.in.id + "' tensor the lower comb");
        }
        chain[n - 1] = std::move(lower);
        current = chain[n - 1];
    }
    return chain;
}

std::vector<LabeledOperator> validate_comb(const QuantumComb &comb, double tol) {
    return validate_comb(comb.space(), comb.op(), tol);
}

QuantumComb::QuantumComb(CombSpace space, const LabeledOperator &op, double tol)
    : space_(std::move(space)), op_(canonical(space_, op)), chain_(validate_comb(space_, op_, tol)) {}

std::vector<LabeledOperator> validate_tester(const CombSpace &space, const std::vector<Outcome> &outcomes,
                                             double tol) {
    if (outcomes.empty()) throw Error(ErrorKind::OutcomeMismatch, "a tester needs at least one outcome");
    LabeledOperator total = LabeledOperator::identity(space.labels()) * Complex(0.0);
    std::set<std::string> seen;
    for (const auto &o : outcomes) {
        if (!seen.insert(o.id).second) throw Error(ErrorKind::OutcomeMismatch, "outcome '" + o.id + "' repeated");
        const LabeledOperator element = canonical(space, o.op);
        require_psd(element, tol, "tester element '" + o.id + "'");
        total += element;
    }
    const std::size_t n_steps = space.size();
    std::vector<LabeledOperator> xi(n_steps);
    LabeledOperator current = total;
    for (std::size_t n = n_steps; n >= 1; --n) {
        const Step &step = space.step(n);
        LabeledOperator candidate = partial_trace(current, {step.out.id}) * Complex(1.0 / step.out.dim);
        const LabeledOperator expected = embed_identity(candidate, step.out, 2 * (n - 1));
        const double residual = max_abs_diff(current, expected);
        if (!(residual <= tol)) {
            throw NormalizationViolation(static_cast<int>(n), residual,
                                         "tester sum is not identity on '" + step.out.id + "' tensor Xi");
        }
        xi[n - 1] = candidate;
        if (n > 1) {
            current = partial_trace(candidate, {step.in.id});
        } else {
            const double residual0 = std::abs(candidate.trace() - Complex(1.0));
            if (!(residual0 <= tol)) {
                throw NormalizationViolation(0, residual0, "trace of the first Xi is not 1");
            }
        }
    }
    return xi;
}

std::vector<LabeledOperator> validate_tester(const Tester &tester, double tol) {
    return validate_tester(tester.space(), tester.outcomes(), tol);
}

Tester::Tester(CombSpace space, std::vector<Outcome> outcomes, double tol)
    : space_(std::move(space)), outcomes_(std::move(outcomes)) {
    for (auto &o : outcomes_) o.op = canonical(space_, o.op);
    xi_ = validate_tester(space_, outcomes_, tol);
}

int Tester::find(const std::string &id) const {
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        if (outcomes_[i].id == id) return static_cast<int>(i);
    }
    return -1;
}

LabeledOperator choi_of_channel(const std::vector<Matrix> &kraus, const SystemLabel &in, const SystemLabel &out) {
    if (kraus.empty()) throw Error(ErrorKind::NotTracePreserving, "no Kraus operators");
    const Eigen::Index din = in.dim, dout = out.dim;
    Matrix completeness = Matrix::Zero(din, din);
    Matrix choi = Matrix::Zero(din * dout, din * dout);
    for (const auto &k : kraus) {
        if (k.rows() != dout || k.cols() != din) {
            throw Error(ErrorKind::ShapeMismatch, "Kraus operator must be " + std::to_string(dout) + "x" +
                                                      std::to_string(din));
        }
        completeness += k.adjoint() * k;
        Eigen::VectorXcd v(din * dout);
        for (Eigen::Index o = 0; o < dout; ++o) {
            for (Eigen::Index i = 0; i < din; ++i) v[o * din + i] = k(o, i);
        }
        choi += v * v.adjoint();
    }
    const double defect = (completeness - Matrix::Identity(din, din)).cwiseAbs().maxCoeff();
    if (defect > 1e-10) {
        throw Error(ErrorKind::NotTracePreserving, "sum K^dagger K deviates from identity by " + format_number(defect));
    }
    return {{out, in}, std::move(choi)};
}

QuantumComb comb_of_state(const LabeledOperator &rho, double tol) {
    if (rho.factors().size() != 1) throw Error(ErrorKind::NotAState, "a state comb needs exactly one factor");
    if (!rho.is_hermitian(std::max(tol, default_herm_tol(rho.matrix())))) {
        throw Error(ErrorKind::NotAState, "state is not Hermitian");
    }
    const double tr_defect = std::abs(rho.trace() - Complex(1.0));
    if (tr_defect > tol) throw Error(ErrorKind::NotAState, "trace differs from 1 by " + format_number(tr_defect));
    if (min_eig(rho.hermitian_part()) < -tol) throw Error(ErrorKind::NotAState, "state is not positive");
    const SystemLabel out = rho.factors()[0];
    const SystemLabel pre{out.id + ".pre", 1};
    return QuantumComb(CombSpace({Step{pre, out}}), embed_identity(rho, pre, 1), tol);
}

QuantumComb comb_of_memoryless_sequence(const std::vector<LabeledOperator> &chois, double tol) {
    if (chois.empty()) throw Error(ErrorKind::InvalidComb, "empty channel sequence");
    std::vector<Step> steps;
    LabeledOperator op = LabeledOperator::scalar(1.0);
    for (const auto &c : chois) {
        if (c.factors().size() != 2) throw Error(ErrorKind::ShapeMismatch, "a Choi operator has factors (out, in)");
        steps.push_back(Step{c.factors()[1], c.factors()[0]});
        op = tensor(op, c);
    }
    return QuantumComb(CombSpace(std::move(steps)), op, tol);
}

double born_probability(const LabeledOperator &tester_element, const QuantumComb &comb) {
    const Complex p = hs_inner(tester_element.adjoint(), comb.op());
    if (std::abs(p.imag()) > 1e-10 * (1.0 + std::abs(p.real()))) {
        throw Error(ErrorKind::NotHermitian, "Born probability has imaginary part " + format_number(p.imag()));
    }
    return p.real();
}

QuantumComb tensor_combs(const QuantumComb &a, const QuantumComb &b) {
    return QuantumComb(CombSpace::concat(a.space(), b.space()), tensor(a.op(), b.op()));
}

Tester tensor_testers(const Tester &a, const Tester &b) {
    std::vector<Outcome> outcomes;
    outcomes.reserve(a.size() * b.size());
    for (const auto &x : a.outcomes()) {
        for (const auto &y : b.outcomes()) outcomes.push_back({x.id + "," + y.id, tensor(x.op, y.op)});
    }
    return Tester(CombSpace::concat(a.space(), b.space()), std::move(outcomes));
}

QuantumComb maximally_mixed_comb(const CombSpace &space) {
    return QuantumComb(space, LabeledOperator::identity(space.labels()) *
                                  Complex(1.0 / static_cast<double>(space.output_dimension())));
}

std::vector<LabeledOperator> maximally_mixed_xi_chain(const CombSpace &space) {
    std::vector<LabeledOperator> xi;
    double inputs = 1.0;
    for (std::size_t n = 1; n <= space.size(); ++n) {
        inputs *= space.step(n).in.dim;
        xi.push_back(LabeledOperator::identity(space.xi_labels(n)) * Complex(1.0 / inputs));
    }
    return xi;
}

}  // namespace qcomb
