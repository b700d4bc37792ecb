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

// qcomb command line: validate files, solve estimation problems, check dual
// certificates, run the product rule check and reproduce the worked examples.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcomb/covariant.hpp"
#include "qcomb/errors.hpp"
#include "qcomb/io.hpp"
#include "qcomb/network.hpp"
#include "qcomb/product_rule.hpp"
#include "qcomb/sdp.hpp"

namespace {

using namespace qcomb;
using io::Json;

enum Exit {
    kOk = 0,
    kUsage = 1,
    kValidation = 2,
    kParse = 3,
    kCertificate = 4,
    kMaxIterations = 5,
    kNumerical = 6,
    kDimensionCap = 7,
    kBadInput = 8,
    kInfeasible = 9,
};

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::UnknownExample: return kUsage;
        case ErrorKind::ParseError: return kParse;
        case ErrorKind::MaxIterations: return kMaxIterations;
        case ErrorKind::NumericalFailure: return kNumerical;
        case ErrorKind::Infeasible: return kInfeasible;
        case ErrorKind::DimensionCap: return kDimensionCap;
        case ErrorKind::BadParameter:
        case ErrorKind::BadDimension: return kBadInput;
        default: return kValidation;
    }
}

struct Config {
    double tol = 1e-8;
    int max_iter = 200;
    int d_grid = 0;  // 0: choose per example
    std::string out;
    bool quiet = false;

    SolveOptions solve() const {
        SolveOptions o;
        o.tol = tol;
        o.max_iter = max_iter;
        return o;
    }
};

/// Human-readable lines on stdout plus a JSON report written to --out
/// ("-" prints the report instead of the lines).
class Output {
  public:
    explicit Output(const Config &cfg) : cfg_(cfg) {}

    void value(const std::string &key, double v) {
        report_[key] = v;
        line(key, fmt(v));
    }
    void value(const std::string &key, long v) {
        report_[key] = v;
        line(key, std::to_string(v));
    }
    void flag(const std::string &key, bool v) {
        report_[key] = v;
        line(key, v ? "true" : "false");
    }
    void text(const std::string &key, const std::string &v) {
        report_[key] = v;
        line(key, v);
    }
    void note(const std::string &msg) {
        report_["notes"].push_back(msg);
        if (!cfg_.quiet && cfg_.out != "-") std::printf("note: %s\n", msg.c_str());
    }
    Json &report() { return report_; }

    void finish() const {
        if (cfg_.out.empty()) return;
        if (cfg_.out == "-") {
            std::cout << report_.dump(2) << '\n';
        } else {
            io::write_json(cfg_.out, report_);
        }
    }

    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return buf;
    }

  private:
    void line(const std::string &key, const std::string &v) const {
        if (!cfg_.quiet && cfg_.out != "-") std::printf("%-28s %s\n", key.c_str(), v.c_str());
    }

    const Config &cfg_;
    Json report_ = Json::object();
};

std::string kind_of_file(const Json &j) {
    if (auto it = j.find("kind"); it != j.end() && it->is_string()) return it->get<std::string>();
    if (j.contains("labels_x")) return "problem";
    if (j.contains("elements")) return "group";
    if (j.contains("outcomes")) return "tester";
    if (j.contains("operator")) return "comb";
    throw Error(ErrorKind::ParseError, "cannot tell the file kind; expected a comb, tester, problem or group file");
}

int cmd_validate(const Config &cfg, const std::string &path) {
    Output out(cfg);
    const Json j = io::read_json(path);
    const std::string kind = kind_of_file(j);
    out.text("kind", kind);
    try {
        if (kind == "comb") {
            auto f = io::comb_file_from_json(j);
            validate_comb(f.space, f.op);
            out.value("steps", static_cast<long>(f.space.size()));
        } else if (kind == "tester") {
            auto f = io::tester_file_from_json(j);
            validate_tester(f.space, f.outcomes);
            out.value("steps", static_cast<long>(f.space.size()));
            out.value("outcomes", static_cast<long>(f.outcomes.size()));
        } else if (kind == "problem") {
            auto p = io::problem_from_json(j);
            out.value("steps", static_cast<long>(p.space().size()));
            out.value("labels", static_cast<long>(p.size()));
        } else if (kind == "group") {
            auto a = io::group_from_json(j);
            out.value("elements", static_cast<long>(a.size()));
        } else {
            throw Error(ErrorKind::ParseError, "unknown file kind \"" + kind + "\"");
        }
    } catch (const NormalizationViolation &e) {
        out.text("status", "invalid");
        out.value("level", static_cast<long>(e.level()));
        out.value("residual", e.residual());
        out.text("error", e.what());
        out.finish();
        return kValidation;
    }
    out.text("status", "valid");
    out.finish();
    return kOk;
}

void print_solution(Output &out, const SdpSolution &s) {
    out.value("gamma", s.gamma_primal);
    out.value("gamma_dual", s.gamma_dual);
    out.value("lambda", s.lambda);
    out.value("gap", s.gap);
    out.value("relative_gap", s.relative_gap);
    out.value("payoff_shift", s.payoff_shift);
    out.value("iterations", static_cast<long>(s.iterations));
    out.value("certificate_margin", s.certificate_margin);
    out.flag("certified", s.certified);
}

bool solution_ok(const SdpSolution &s, const Config &cfg) { return s.certified && s.relative_gap <= cfg.tol; }

int cmd_solve(const Config &cfg, const std::string &path) {
    Output out(cfg);
    const auto p = io::problem_from_json(io::read_json(path));
    const auto s = solve(p, cfg.solve());
    print_solution(out, s);
    out.report() = io::to_json(s);
    out.finish();
    return solution_ok(s, cfg) ? kOk : kCertificate;
}

int cmd_dual_check(const Config &cfg, const std::string &problem_path, const std::string &cert_path,
                   std::optional<double> lambda) {
    Output out(cfg);
    const auto p = io::problem_from_json(io::read_json(problem_path));
    const Json j = io::read_json(cert_path);
    const Json &comb_json = j.contains("comb_certificate") ? j["comb_certificate"] : j;
    if (!lambda) {
        if (!j.contains("lambda") || !j["lambda"].is_number()) {
            throw Error(ErrorKind::ParseError, "no \"lambda\" in the certificate file; pass --lambda");
        }
        lambda = j["lambda"].get<double>();
    }
    auto f = io::comb_file_from_json(comb_json);
    if (!(f.space == p.space())) throw Error(ErrorKind::InvalidComb, "certificate comb lives on another space");
    const QuantumComb r(f.space, f.op);
    const auto rep = certify_dual(*lambda, r, p);
    out.value("lambda", *lambda);
    out.value("bound", rep.bound);
    out.value("min_margin", rep.min_margin);
    out.flag("certified", rep.ok);
    out.finish();
    return rep.ok ? kOk : kCertificate;
}

int cmd_product_rule(const Config &cfg, const std::vector<std::string> &paths, const std::string &joint_path) {
    Output out(cfg);
    std::vector<EstimationProblem> factors;
    for (const auto &path : paths) factors.push_back(io::problem_from_json(io::read_json(path)));
    ProductRuleOptions opts;
    opts.solve = cfg.solve();
    const auto r = joint_path.empty()
                       ? verify_product_rule(factors, opts)
                       : verify_product_rule(io::problem_from_json(io::read_json(joint_path)), factors, opts);
    for (std::size_t k = 0; k < r.gamma_factors.size(); ++k) {
        out.value("gamma_factor_" + std::to_string(k + 1), r.gamma_factors[k]);
    }
    out.value("gamma_joint", r.gamma_joint);
    out.value("product", r.product_of_factors);
    out.value("relative_deviation", r.relative_deviation);
    out.value("product_tester_payoff", r.product_tester_payoff);
    out.flag("certified", r.certified);
    out.report() = io::to_json(r);
    out.finish();
    return r.within_tolerance && r.certified ? kOk : kCertificate;
}

struct ExampleParams {
    double p = 0.7;
    int levels = 2;
    int copies = 2;
    std::string spec = "twin-helstrom";
    int printed_m = 0;
};

Matrix ket_density(const Eigen::VectorXcd &v) { return v * v.adjoint(); }

int example_helstrom(const Config &cfg, Output &out) {
    const Eigen::Vector2cd k0(1, 0), kp(std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2);
    const auto p = state_problem({"s", 2}, {ket_density(k0), ket_density(kp)}, {0.5, 0.5}, delta_payoff(2));
    const auto s = solve(p, cfg.solve());
    print_solution(out, s);
    out.value("helstrom_closed_form", 0.5 * (1.0 + std::sqrt(1.0 - std::norm(k0.dot(kp)))));
    return solution_ok(s, cfg) ? kOk : kCertificate;
}

int example_ykl(const Config &cfg, Output &out) {
    std::vector<Matrix> trine;
    for (int k = 0; k < 3; ++k) {
        const double t = 2.0 * std::numbers::pi * k / 3.0;
        trine.push_back(ket_density(Eigen::Vector2cd(std::cos(t / 2), std::sin(t / 2))));
    }
    const auto r = yuen_kennedy_lax(trine, {1.0 / 3, 1.0 / 3, 1.0 / 3}, cfg.solve());
    out.value("p_succ", r.p_succ);
    out.value("slackness_residual", r.slackness_residual);
    out.value("lambda_trace", r.lambda_op.trace().real());
    out.value("closed_form", 2.0 / 3.0);
    out.flag("certified", r.solution.certified);
    return r.solution.certified ? kOk : kCertificate;
}

int example_qmax(const Config &cfg, const ExampleParams &ep, Output &out) {
    const int d = ep.levels;
    const int grid = cfg.d_grid > 0 ? cfg.d_grid : 2 * d;
    const auto action = cyclic_phase_action({"s"}, d, grid);
    const Eigen::VectorXcd seed = Eigen::VectorXcd::Constant(d, 1.0 / std::sqrt(double(d)));
    const LabeledOperator rho0({{"s", d}}, ket_density(seed));
    const auto q = qmax_state(rho0, action, cfg.solve());
    const auto s = solve(orbit_problem(comb_of_state(rho0), action, delta_payoff(grid)), cfg.solve());
    out.value("levels", static_cast<long>(d));
    out.value("grid", static_cast<long>(grid));
    out.value("q_max", q.q_max);
    out.value("p_succ_from_q_max", 1.0 / (grid * q.q_max));
    out.value("p_succ_sdp", s.gamma());
    out.value("closed_form", double(d) / grid);
    return solution_ok(s, cfg) ? kOk : kCertificate;
}

int example_phase(const Config &cfg, const ExampleParams &ep, Output &out) {
    const auto o = phase_estimation_optimum(ep.levels);
    const auto s = solve(phase_estimation_problem(ep.levels, cfg.d_grid), cfg.solve());
    out.value("levels", static_cast<long>(ep.levels));
    out.value("c_min_sdp", -s.gamma());
    out.value("c_min_oracle", o.c_min);
    out.value("c_min_printed_formula", o.printed_c_min);
    out.flag("printed_formula_agrees", o.printed_formula_agrees);
    out.flag("certified", s.certified);
    Json coeffs = Json::array();
    for (Eigen::Index n = 0; n < o.coefficients.size(); ++n) coeffs.push_back(o.coefficients[n]);
    out.report()["coefficients"] = coeffs;
    if (!o.printed_formula_agrees) {
        out.note("printed 4 sin^2(pi/(2d)) differs from the tridiagonal optimum 2(1 - cos(pi/(d+1)))");
    }
    return solution_ok(s, cfg) ? kOk : kCertificate;
}

int example_two_phase(const Config &cfg, const ExampleParams &ep, Output &out) {
    const int grid = cfg.d_grid > 0 ? cfg.d_grid : 8;
    const auto r = counterexample_correlated_payoff(ep.p, grid, 24, cfg.solve());
    out.value("p", ep.p);
    out.value("gamma_joint", r.gamma_joint);
    out.value("gamma_parallel", r.gamma_parallel);
    out.value("gamma_closed_form", r.gamma_predicted);
    out.value("optimizer_overlap", r.overlap);
    out.value("best_product_input", r.product_value);
    out.flag("certified", r.certified);
    return r.certified ? kOk : kCertificate;
}

int example_sum_phases(const ExampleParams &ep, Output &out) {
    const auto r = sum_of_phases(ep.levels, ep.copies, ep.printed_m);
    out.value("levels", static_cast<long>(ep.levels));
    out.value("copies", static_cast<long>(ep.copies));
    out.value("c_entangled", r.c_entangled);
    out.value("c_product", r.c_product);
    out.value("ratio", r.ratio);
    out.value("c_product_printed_formula", r.printed_c_product);
    out.value("printed_formula_m", static_cast<long>(r.printed_m));
    if (ep.printed_m == 0) out.note("printed product formula evaluated with M = d");
    return kOk;
}

int example_multicopy(const ExampleParams &ep, Output &out) {
    const Eigen::Vector2cd k0(1, 0), kp(std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2);
    const auto r = counterexample_multicopy(k0, kp, {0.5, 0.5}, ep.copies);
    for (std::size_t k = 0; k < r.p_succ.size(); ++k) {
        out.value("p_succ_" + std::to_string(k + 1), r.p_succ[k]);
        out.value("p_succ_1_pow_" + std::to_string(k + 1), r.p_single_pow[k]);
    }
    out.flag("strict_advantage", r.strict_advantage);
    return kOk;
}

int example_product_rule(const Config &cfg, const ExampleParams &ep, Output &out) {
    int copies = 0;
    if (ep.spec == "twin-helstrom") {
        copies = 2;
    } else if (ep.spec == "triple-helstrom") {
        copies = 3;
    } else {
        throw Error(ErrorKind::BadParameter, "unknown product rule spec \"" + ep.spec +
                                                 "\" (expected twin-helstrom or triple-helstrom)");
    }
    const Eigen::Vector2cd k0(1, 0), kp(std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2);
    std::vector<EstimationProblem> factors;
    for (int k = 0; k < copies; ++k) {
        factors.push_back(state_problem({"s" + std::to_string(k + 1), 2}, {ket_density(k0), ket_density(kp)},
                                        {0.5, 0.5}, delta_payoff(2)));
    }
    ProductRuleOptions opts;
    opts.solve = cfg.solve();
    const auto r = verify_product_rule(factors, opts);
    out.value("gamma_factor", r.gamma_factors.front());
    out.value("gamma_joint", r.gamma_joint);
    out.value("product", r.product_of_factors);
    out.value("relative_deviation", r.relative_deviation);
    out.flag("certified", r.certified);
    return r.within_tolerance && r.certified ? kOk : kCertificate;
}

int cmd_example(const Config &cfg, const std::string &name, const ExampleParams &ep) {
    static const std::set<std::string> names{"helstrom", "ykl",        "qmax",      "phase",
                                             "two-phase", "sum-phases", "multicopy", "product-rule"};
    if (!names.contains(name)) {
        throw Error(ErrorKind::UnknownExample, "no example named \"" + name +
                                                   "\"; try helstrom, ykl, qmax, phase, two-phase, sum-phases, "
                                                   "multicopy or product-rule");
    }
    Output out(cfg);
    out.text("example", name);
    int code = kOk;
    if (name == "helstrom") {
        code = example_helstrom(cfg, out);
    } else if (name == "ykl") {
        code = example_ykl(cfg, out);
    } else if (name == "qmax") {
        code = example_qmax(cfg, ep, out);
    } else if (name == "phase") {
        code = example_phase(cfg, ep, out);
    } else if (name == "two-phase") {
        code = example_two_phase(cfg, ep, out);
    } else if (name == "sum-phases") {
        code = example_sum_phases(ep, out);
    } else if (name == "multicopy") {
        code = example_multicopy(ep, out);
    } else {
        code = example_product_rule(cfg, ep, out);
    }
    out.finish();
    return code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Optimal estimation networks for quantum processes"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--tol", cfg.tol, "Solver tolerance")->check(CLI::PositiveNumber);
    app.add_option("--max-iter", cfg.max_iter, "Interior-point iteration limit")->check(CLI::Range(1, 1000000));
    app.add_option("--d-grid", cfg.d_grid, "Phase grid size for the examples (0 picks a default)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--out", cfg.out, "Write a JSON report here (- for stdout)");
    app.add_flag("--quiet", cfg.quiet, "Print nothing but errors");

    std::string path, path2, joint;
    std::optional<double> lambda;
    std::vector<std::string> paths;
    ExampleParams ep;
    std::string example;

    auto *validate = app.add_subcommand("validate", "Check a comb, tester, problem or group file");
    validate->add_option("file", path)->required();
    auto *solve_cmd = app.add_subcommand("solve", "Solve an estimation problem file");
    solve_cmd->add_option("problem", path)->required();
    auto *dual = app.add_subcommand("dual-check", "Certify an upper bound with a comb and a scale");
    dual->add_option("problem", path)->required();
    dual->add_option("certificate", path2, "Solution file, or a comb file together with --lambda")->required();
    dual->add_option("--lambda", lambda, "Certificate scale");
    auto *prod = app.add_subcommand("product-rule", "Compare a joint optimum with the product of factor optima");
    prod->add_option("factors", paths, "Factor problem files")->required();
    prod->add_option("--joint", joint, "Joint problem file to check instead of building it");
    auto *ex = app.add_subcommand("example", "Reproduce a worked example");
    ex->add_option("name", example)->required();
    ex->add_option("--p", ep.p, "Correlation weight for two-phase")->check(CLI::Range(0.0, 1.0));
    ex->add_option("--levels", ep.levels, "Levels per phase");
    ex->add_option("--copies", ep.copies, "Number of copies or phases");
    ex->add_option("--spec", ep.spec, "Product rule instance");
    ex->add_option("--m", ep.printed_m, "M in the printed sum-of-phases formula (0 takes M = levels)")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*validate) return cmd_validate(cfg, path);
        if (*solve_cmd) return cmd_solve(cfg, path);
        if (*dual) return cmd_dual_check(cfg, path, path2, lambda);
        if (*prod) return cmd_product_rule(cfg, paths, joint);
        if (*ex) return cmd_example(cfg, example, ep);
    } catch (const Error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code(e.kind());
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadInput;
    }
    return kUsage;
}
