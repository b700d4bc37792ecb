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

#include "qcomb/io.hpp"

#include <fstream>

#include "qcomb/errors.hpp"

namespace qcomb::io {

namespace {

[[noreturn]] void parse_error(const std::string &what) { throw Error(ErrorKind::ParseError, what); }

const Json &field(const Json &j, const char *key) {
    if (!j.is_object()) parse_error(std::string("expected an object holding \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) parse_error(std::string("missing field \"") + key + "\"");
    return *it;
}

double number(const Json &j, const std::string &what) {
    if (!j.is_number()) parse_error(what + " must be a number");
    return j.get<double>();
}

std::string text(const Json &j, const std::string &what) {
    if (!j.is_string()) parse_error(what + " must be a string");
    return j.get<std::string>();
}

int integer(const Json &j, const std::string &what) {
    if (!j.is_number_integer()) parse_error(what + " must be an integer");
    return j.get<int>();
}

SystemLabel label_from_json(const Json &j) {
    return {text(field(j, "id"), "factor id"), integer(field(j, "dim"), "factor dim")};
}

Json label_to_json(const SystemLabel &l) { return Json{{"id", l.id}, {"dim", l.dim}}; }

std::vector<double> numbers(const Json &j, const std::string &what) {
    if (!j.is_array()) parse_error(what + " must be an array");
    std::vector<double> out;
    for (const auto &v : j) out.push_back(number(v, what + " entry"));
    return out;
}

Eigen::MatrixXd real_matrix(const Json &j, const std::string &what) {
    if (!j.is_array()) parse_error(what + " must be an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::MatrixXd m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto row = numbers(j[r], what + " row");
        if (static_cast<Eigen::Index>(row.size()) != rows) parse_error(what + " must be square");
        for (Eigen::Index c = 0; c < rows; ++c) m(r, c) = row[c];
    }
    return m;
}

Json real_matrix_to_json(const Eigen::MatrixXd &m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

Json outcomes_to_json(const std::vector<Outcome> &outcomes) {
    Json out = Json::object();
    for (const auto &o : outcomes) out[o.id] = to_json(o.op);
    return out;
}

}  // namespace

Json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) parse_error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        parse_error(path + ": " + e.what());
    }
}

void write_json(const std::string &path, const Json &j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidProblem, "cannot write " + path);
    out << j.dump(2) << '\n';
}

Json matrix_to_json(const Matrix &m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        out.push_back(std::move(row));
    }
    return out;
}

Matrix matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty()) parse_error("matrix must be a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array()) parse_error("matrix rows must be arrays");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json &row = j[r];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) parse_error("matrix rows differ in length");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Json &e = row[c];
            if (e.is_number()) {
                m(r, c) = e.get<double>();
            } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
                m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
            } else {
                parse_error("matrix entries must be [re, im] pairs");
            }
        }
    }
    return m;
}

Json to_json(const LabeledOperator &op) {
    Json factors = Json::array();
    for (const auto &f : op.factors()) factors.push_back(label_to_json(f));
    return Json{{"factors", std::move(factors)}, {"data", matrix_to_json(op.matrix())}};
}

LabeledOperator operator_from_json(const Json &j) {
    const Json &fs = field(j, "factors");
    if (!fs.is_array()) parse_error("\"factors\" must be an array");
    std::vector<SystemLabel> factors;
    long dim = 1;
    for (const auto &f : fs) {
        factors.push_back(label_from_json(f));
        if (factors.back().dim < 1) parse_error("factor " + factors.back().id + " has nonpositive dimension");
        dim *= factors.back().dim;
        if (dim > static_cast<long>(max_dimension())) {
            throw Error(ErrorKind::DimensionCap, "declared dimension " + std::to_string(dim) + " exceeds " +
                                                     std::to_string(max_dimension()));
        }
    }
    Matrix m = matrix_from_json(field(j, "data"));
    if (m.rows() != dim || m.cols() != dim) {
        parse_error("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    " but its factors have total dimension " + std::to_string(dim));
    }
    return LabeledOperator(std::move(factors), std::move(m));
}

Json to_json(const CombSpace &space) {
    Json steps = Json::array();
    for (const auto &s : space.steps()) steps.push_back(Json{{"in", label_to_json(s.in)}, {"out", label_to_json(s.out)}});
    return steps;
}

CombSpace space_from_json(const Json &steps) {
    if (!steps.is_array() || steps.empty()) parse_error("\"steps\" must be a nonempty array");
    std::vector<Step> out;
    for (const auto &s : steps) out.push_back({label_from_json(field(s, "in")), label_from_json(field(s, "out"))});
    return CombSpace(std::move(out));
}

Json to_json(const QuantumComb &comb) {
    return Json{{"kind", "comb"}, {"steps", to_json(comb.space())}, {"operator", to_json(comb.op())}};
}

CombFile comb_file_from_json(const Json &j) {
    return {space_from_json(field(j, "steps")), operator_from_json(field(j, "operator"))};
}

Json to_json(const Tester &tester) {
    return Json{{"kind", "tester"}, {"steps", to_json(tester.space())}, {"outcomes", outcomes_to_json(tester.outcomes())}};
}

TesterFile tester_file_from_json(const Json &j) {
    TesterFile f{space_from_json(field(j, "steps")), {}};
    const Json &os = field(j, "outcomes");
    if (!os.is_object() || os.empty()) parse_error("\"outcomes\" must be a nonempty object");
    for (const auto &[id, m] : os.items()) f.outcomes.push_back({id, operator_from_json(m)});
    return f;
}

Json to_json(const EstimationProblem &p) {
    Json combs = Json::object();
    for (std::size_t x = 0; x < p.size(); ++x) combs[p.labels()[x]] = to_json(p.combs()[x].op());
    return Json{{"steps", to_json(p.space())},
                {"labels_x", p.labels()},
                {"prior", p.prior()},
                {"payoff", real_matrix_to_json(p.payoff())},
                {"payoff_shift", p.payoff_shift()},
                {"combs", std::move(combs)}};
}

EstimationProblem problem_from_json(const Json &j) {
    CombSpace space = space_from_json(field(j, "steps"));
    const Json &ls = field(j, "labels_x");
    if (!ls.is_array()) parse_error("\"labels_x\" must be an array");
    std::vector<std::string> labels;
    for (const auto &l : ls) labels.push_back(text(l, "label"));
    std::vector<double> prior = numbers(field(j, "prior"), "prior");
    Eigen::MatrixXd payoff = real_matrix(field(j, "payoff"), "payoff");
    double shift = 0.0;
    if (auto it = j.find("payoff_shift"); it != j.end()) shift = number(*it, "payoff_shift");
    const Json &cs = field(j, "combs");
    std::vector<QuantumComb> combs;
    for (const auto &l : labels) {
        auto it = cs.find(l);
        if (it == cs.end()) parse_error("no comb for label " + l);
        combs.emplace_back(space, operator_from_json(*it));
    }
    if (cs.size() != labels.size()) parse_error("\"combs\" has entries for unknown labels");
    return EstimationProblem(std::move(space), std::move(labels), std::move(prior), std::move(combs),
                             std::move(payoff), shift);
}

Json to_json(const SdpSolution &s) {
    Json out{{"gamma", s.gamma_primal},
             {"gamma_dual", s.gamma_dual},
             {"lambda", s.lambda},
             {"gap", s.gap},
             {"relative_gap", s.relative_gap},
             {"payoff_shift", s.payoff_shift},
             {"iterations", s.iterations},
             {"status", ipm::to_string(s.status)},
             {"certified", s.certified},
             {"certificate_margin", s.certificate_margin}};
    out["tester"] = s.tester ? to_json(*s.tester) : Json();
    out["comb_certificate"] = s.comb_certificate ? to_json(*s.comb_certificate) : Json();
    return out;
}

Json to_json(const FiniteGroupAction &a) {
    Json rep = Json::object();
    for (const auto &[label, ms] : a.rep()) {
        Json per = Json::object();
        for (std::size_t g = 0; g < a.size(); ++g) per[a.elements()[g]] = matrix_to_json(ms[g]);
        rep[label] = std::move(per);
    }
    Json out{{"elements", a.elements()}, {"table", a.table()}, {"rep", std::move(rep)}};
    if (!a.conjugate().empty()) out["conjugate"] = std::vector<std::string>(a.conjugate().begin(), a.conjugate().end());
    return out;
}

FiniteGroupAction group_from_json(const Json &j) {
    const Json &es = field(j, "elements");
    if (!es.is_array() || es.empty()) parse_error("\"elements\" must be a nonempty array");
    std::vector<std::string> elements;
    for (const auto &e : es) elements.push_back(text(e, "element"));
    auto index = [&](const Json &e) {
        if (e.is_number_integer()) return e.get<int>();
        const std::string id = text(e, "table entry");
        for (std::size_t k = 0; k < elements.size(); ++k)
            if (elements[k] == id) return static_cast<int>(k);
        parse_error("table entry " + id + " is not an element");
    };
    const Json &ts = field(j, "table");
    if (!ts.is_array()) parse_error("\"table\" must be an array of rows");
    std::vector<std::vector<int>> table;
    for (const auto &row : ts) {
        if (!row.is_array()) parse_error("table rows must be arrays");
        table.emplace_back();
        for (const auto &e : row) table.back().push_back(index(e));
    }
    std::map<std::string, std::vector<Matrix>> rep;
    const Json &rs = field(j, "rep");
    if (!rs.is_object()) parse_error("\"rep\" must be an object");
    for (const auto &[label, per] : rs.items()) {
        std::vector<Matrix> ms;
        for (const auto &e : elements) ms.push_back(matrix_from_json(field(per, e.c_str())));
        rep[label] = std::move(ms);
    }
    std::set<std::string> conjugate;
    if (auto it = j.find("conjugate"); it != j.end()) {
        if (!it->is_array()) parse_error("\"conjugate\" must be an array");
        for (const auto &c : *it) conjugate.insert(text(c, "conjugate label"));
    }
    return FiniteGroupAction(std::move(elements), std::move(table), std::move(rep), std::move(conjugate));
}

Json to_json(const ProductRuleReport &r) {
    return Json{{"gamma_joint", r.gamma_joint},
                {"gamma_factors", r.gamma_factors},
                {"product", r.product_of_factors},
                {"relative_deviation", r.relative_deviation},
                {"certified", r.certified},
                {"lambda_joint", r.lambda_joint},
                {"certificate_margin", r.certificate.min_margin},
                {"product_tester_payoff", r.product_tester_payoff}};
}

}  // namespace qcomb::io
