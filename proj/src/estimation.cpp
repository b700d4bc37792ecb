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

#include "qcomb/estimation.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "qcomb/errors.hpp"

namespace qcomb {

EstimationProblem::EstimationProblem(CombSpace space, std::vector<std::string> labels, std::vector<double> prior,
                                     std::vector<QuantumComb> combs, Eigen::MatrixXd payoff, double payoff_shift)
    : space_(std::move(space)),
      labels_(std::move(labels)),
      prior_(std::move(prior)),
      combs_(std::move(combs)),
      payoff_(std::move(payoff)),
      payoff_shift_(payoff_shift) {
    const std::size_t n = labels_.size();
    if (n == 0) throw Error(ErrorKind::InvalidProblem, "parameter set is empty");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != n) throw Error(ErrorKind::DuplicateLabel, "parameter labels must be distinct");
    if (prior_.size() != n || combs_.size() != n) {
        throw Error(ErrorKind::InvalidProblem, "prior and comb lists must have one entry per parameter");
    }
    if (payoff_.rows() != static_cast<Eigen::Index>(n) || payoff_.cols() != static_cast<Eigen::Index>(n)) {
        throw Error(ErrorKind::InvalidProblem, "payoff must be |X| x |X|");
    }
    double total = 0.0;
    for (double w : prior_) {
        if (!(w >= 0.0)) throw Error(ErrorKind::InvalidProblem, "prior has a negative or NaN weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw Error(ErrorKind::InvalidProblem, "prior sums to " + format_number(total));
    }
    if (!payoff_.allFinite()) throw Error(ErrorKind::InvalidProblem, "payoff has non-finite entries");
    if (payoff_.minCoeff() < 0.0) {
        throw Error(ErrorKind::NegativePayoff,
                    "payoff has entry " + format_number(payoff_.minCoeff()) + "; shift it first");
    }
    for (const auto &c : combs_) {
        if (!(c.space() == space_)) throw Error(ErrorKind::InvalidProblem, "all combs must share the problem space");
    }
}

int EstimationProblem::index_of(const std::string &label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return static_cast<int>(i);
    }
    return -1;
}

EstimationProblem EstimationProblem::with_payoff(Eigen::MatrixXd payoff, double payoff_shift) const {
    return {space_, labels_, prior_, combs_, std::move(payoff), payoff_shift};
}

EstimationProblem make_shifted_problem(CombSpace space, std::vector<std::string> labels, std::vector<double> prior,
                                       std::vector<QuantumComb> combs, const Eigen::MatrixXd &raw_payoff) {
    const double c = raw_payoff.size() ? std::max(0.0, -raw_payoff.minCoeff()) : 0.0;
    Eigen::MatrixXd g = raw_payoff.array() + c;
    return {std::move(space), std::move(labels), std::move(prior), std::move(combs), std::move(g), c};
}

EstimationProblem shift_payoff(const EstimationProblem &p, double c) {
    Eigen::MatrixXd g = p.payoff().array() + c;
    return p.with_payoff(std::move(g), p.payoff_shift() + c);
}

EstimationProblem state_problem(const SystemLabel &system, const std::vector<Matrix> &states,
                                std::vector<double> prior, Eigen::MatrixXd payoff, std::vector<std::string> labels) {
    if (labels.empty()) {
        for (std::size_t i = 0; i < states.size(); ++i) labels.push_back(std::to_string(i));
    }
    std::vector<QuantumComb> combs;
    for (const auto &rho : states) combs.push_back(comb_of_state(LabeledOperator({system}, rho)));
    if (combs.empty()) throw Error(ErrorKind::InvalidProblem, "no states");
    CombSpace space = combs.front().space();
    return {std::move(space), std::move(labels), std::move(prior), std::move(combs), std::move(payoff)};
}

Eigen::MatrixXd delta_payoff(std::size_t n) {
    return Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

LabeledOperator weighted_sum(const std::vector<LabeledOperator> &ops, const std::vector<double> &weights) {
    if (ops.empty() || ops.size() != weights.size()) {
        throw Error(ErrorKind::ShapeMismatch, "weighted_sum needs one weight per operator");
    }
    LabeledOperator acc = ops.front() * Complex(weights.front());
    for (std::size_t k = 1; k < ops.size(); ++k) {
        if (weights[k] != 0.0) acc += ops[k] * Complex(weights[k]);
    }
    return acc;
}

std::vector<LabeledOperator> payoff_operators(const EstimationProblem &p) {
    std::vector<LabeledOperator> combs;
    for (const auto &c : p.combs()) combs.push_back(c.op());
    std::vector<LabeledOperator> out;
    const std::size_t n = p.size();
    for (std::size_t xh = 0; xh < n; ++xh) {
        std::vector<double> w(n);
        for (std::size_t x = 0; x < n; ++x) w[x] = p.prior()[x] * p.payoff()(xh, x);
        out.push_back(weighted_sum(combs, w));
    }
    return out;
}

namespace {

std::vector<int> outcome_order(const Tester &t, const EstimationProblem &p) {
    if (t.size() != p.size()) {
        throw Error(ErrorKind::OutcomeMismatch, "tester has " + std::to_string(t.size()) + " outcomes, problem has " +
                                                    std::to_string(p.size()) + " parameters");
    }
    if (!(t.space() == p.space())) throw Error(ErrorKind::OutcomeMismatch, "tester and problem spaces differ");
    std::vector<int> order;
    for (const auto &label : p.labels()) {
        const int k = t.find(label);
        if (k < 0) throw Error(ErrorKind::OutcomeMismatch, "tester has no outcome '" + label + "'");
        order.push_back(k);
    }
    return order;
}

}  // namespace

double expected_payoff(const Tester &t, const EstimationProblem &p) {
    const auto order = outcome_order(t, p);
    const auto g = payoff_operators(p);
    double total = 0.0;
    for (std::size_t xh = 0; xh < p.size(); ++xh) total += hs_inner(t.outcomes()[order[xh]].op, g[xh]).real();
    return total - p.payoff_shift();
}

double expected_payoff_born(const Tester &t, const EstimationProblem &p) {
    const auto order = outcome_order(t, p);
    double total = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) {
        for (std::size_t xh = 0; xh < p.size(); ++xh) {
            const double prob = born_probability(t.outcomes()[order[xh]].op, p.combs()[x]);
            total += p.prior()[x] * p.payoff()(xh, x) * prob;
        }
    }
    return total - p.payoff_shift();
}

EstimationProblem joint_problem(const std::vector<EstimationProblem> &ps) {
    if (ps.empty()) throw Error(ErrorKind::InvalidProblem, "joint problem of no factors");
    for (const auto &p : ps) {
        if (p.payoff_shift() != 0.0) {
            throw Error(ErrorKind::InvalidProblem, "joint problems need unshifted factor payoffs");
        }
    }
    std::vector<std::string> labels = ps[0].labels();
    std::vector<double> prior = ps[0].prior();
    std::vector<QuantumComb> combs = ps[0].combs();
    Eigen::MatrixXd g = ps[0].payoff();
    CombSpace space = ps[0].space();
    for (std::size_t k = 1; k < ps.size(); ++k) {
        const auto &q = ps[k];
        space = CombSpace::concat(space, q.space());
        std::vector<std::string> l2;
        std::vector<double> p2;
        std::vector<QuantumComb> c2;
        const std::size_t na = labels.size(), nb = q.size();
        for (std::size_t a = 0; a < na; ++a) {
            for (std::size_t b = 0; b < nb; ++b) {
                l2.push_back(labels[a] + "," + q.labels()[b]);
                p2.push_back(prior[a] * q.prior()[b]);
                c2.push_back(QuantumComb(space, tensor(combs[a].op(), q.combs()[b].op())));
            }
        }
        Eigen::MatrixXd g2(na * nb, na * nb);
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t b = 0; b < nb; ++b)
                for (std::size_t a2 = 0; a2 < na; ++a2)
                    for (std::size_t b2 = 0; b2 < nb; ++b2)
                        g2(a * nb + b, a2 * nb + b2) = g(a, a2) * q.payoff()(b, b2);
        labels = std::move(l2);
        prior = std::move(p2);
        combs = std::move(c2);
        g = std::move(g2);
    }
    // The product of priors can drift from 1 in the last bits.
    double total = 0.0;
    for (double w : prior) total += w;
    for (double &w : prior) w /= total;
    return {std::move(space), std::move(labels), std::move(prior), std::move(combs), std::move(g)};
}

std::vector<double> phase_grid(int n) {
    if (n < 1) throw Error(ErrorKind::BadParameter, "phase grid needs at least one point");
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = 2.0 * std::numbers::pi * k / n;
    return out;
}

}  // namespace qcomb
