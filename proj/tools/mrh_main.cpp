#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mrh/circle_ops.hpp"
#include "mrh/linear_rh.hpp"
#include "mrh/problem.hpp"
#include "mrh/verify.hpp"

namespace {
using nlohmann::ordered_json;

std::string error_json(const std::string& kind, const std::string& message) {
    ordered_json j;
    j["kind"] = kind;
    j["message"] = message;
    return j.dump() + "\n";
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path);
}

double sup_difference(const mrh::GridFunction& a, const mrh::GridFunction& b) {
    if (a.size() != b.size()) throw std::invalid_argument("grid sizes differ");
    double sup = 0.0;
    for (int k = 0; k < a.size(); ++k) sup = std::max(sup, std::abs(a[k] - b[k]));
    return sup;
}

int run_solve(const std::string& problem_path, const std::string& outdir) {
    const mrh::ProblemInstance inst = mrh::instantiate(mrh::parse_problem(problem_path));
    const mrh::SolutionBundle bundle =
        mrh::solve_mixed_problem(inst.problem, inst.zeros, inst.steps);
    mrh::write_solution_csv(outdir + "/solution.csv", inst.problem, bundle);
    const std::string rep = mrh::report_json(bundle);
    write_text(outdir + "/report.json", rep);
    std::cout << rep;
    return bundle.residuals.pass ? 0 : 3;
}

int run_verify(const std::string& problem_path, const std::string& solution_path) {
    const mrh::ProblemInstance inst = mrh::instantiate(mrh::parse_problem(problem_path));
    const mrh::SolutionFileData data = mrh::read_solution_csv(solution_path);
    const mrh::SolutionBundle bundle =
        mrh::rebuild_solution(inst.problem, inst.zeros, data.kappa);
    const double drift = sup_difference(bundle.f_boundary, data.f);
    if (drift > 1e-6)
        throw std::invalid_argument("stored trace disagrees with its recomposition by " +
                                    std::to_string(drift));
    std::cout << mrh::report_json(bundle);
    return bundle.residuals.pass ? 0 : 3;
}

int run_linear(const std::string& table_path, double beta_plus, double beta_minus) {
    const mrh::LinearTable table = mrh::read_linear_table(table_path);
    const mrh::CornerAngles angles{beta_plus, beta_minus};
    const mrh::LinearRHProblem prob =
        mrh::build_linear_problem(table.b_upper, table.rhs_upper, angles);
    const mrh::LinearSolution sol = mrh::solve_linear(prob);
    ordered_json j;
    j["winding"] = prob.two_n / 2.0;
    j["kernel_dimension"] = sol.kernel.size();
    j["residual"] = sol.residual;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_oracle(const std::string& problem_path) {
    const mrh::ProblemFile pf = mrh::parse_problem(problem_path);
    if (!pf.standard_symbol || !pf.standard_arc || !pf.zeros.empty())
        throw std::invalid_argument("oracle runs on the standard arc and symbol without zeros");
    const mrh::ProblemInstance inst = mrh::instantiate(pf);
    const int n = inst.problem.grid();
    const mrh::GridFunction oracle = mrh::log_oracle_solve(inst.problem.fibers, n);
    const mrh::SolutionBundle bundle =
        mrh::continuation_solve(inst.problem.fibers, n, inst.steps);
    const double diff = sup_difference(bundle.f_boundary, oracle);
    ordered_json j;
    j["sup_difference"] = diff;
    j["residual_sup"] = std::max(bundle.residuals.sup_residual_upper,
                                 bundle.residuals.sup_residual_lower);
    j["pass"] = diff < 1e-6;
    std::cout << j.dump(2) << "\n";
    return diff < 1e-6 ? 0 : 3;
}

int run_hilbert(const std::string& in_path, const std::string& out_path) {
    const mrh::GridFunction u = mrh::read_value_csv(in_path);
    mrh::write_value_csv(out_path, u, mrh::hilbert_transform(u));
    return 0;
}

int run_winding(const std::string& in_path) {
    const mrh::GridFunction u = mrh::read_complex_csv(in_path);
    const mrh::DoubledWinding w = mrh::winding_number(u, true);
    if (w.two_n % 2 == 0)
        std::printf("%d\n", w.two_n / 2);
    else
        std::printf("%g\n", w.two_n / 2.0);
    return 0;
}
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixed Riemann-Hilbert boundary problem solver on the unit disk"};
    app.require_subcommand(1);

    std::string problem_path;
    std::string solution_path;
    std::string table_path;
    std::string in_path;
    std::string out_path;
    std::string outdir = ".";
    double beta_plus = 0.5;
    double beta_minus = -0.5;

    auto* solve = app.add_subcommand("solve", "Solve a problem file into solution.csv/report.json");
    solve->add_option("problem", problem_path, "problem file")->required();
    solve->add_option("-o,--output-dir", outdir, "output directory (default .)");

    auto* verify = app.add_subcommand("verify", "Re-check a stored solution against its problem");
    verify->add_option("problem", problem_path, "problem file")->required();
    verify->add_option("solution", solution_path, "solution CSV")->required();

    auto* linear =
        app.add_subcommand("linear", "Linear solve from an upper-arc coefficient table");
    linear->add_option("table", table_path, "CSV with header theta,re_b,im_b,rhs")->required();
    linear->add_option("--beta-plus", beta_plus, "transition angle at +1 (default 0.5)");
    linear->add_option("--beta-minus", beta_minus, "transition angle at -1 (default -0.5)");

    auto* oracle =
        app.add_subcommand("oracle", "Compare the continuation against the log-linear oracle");
    oracle->add_option("problem", problem_path, "problem file with circle-per-row fibers")
        ->required();

    auto* hilbert = app.add_subcommand("hilbert", "Conjugate function of a CSV column");
    hilbert->add_option("input", in_path, "CSV with header theta,value")->required();
    hilbert->add_option("output", out_path, "output CSV path")->required();

    auto* winding = app.add_subcommand("winding", "Winding number of a complex CSV column");
    winding->add_option("input", in_path, "CSV with header theta,re,im")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << error_json("validation", e.what());
        return 2;
    }

    try {
        if (*solve) return run_solve(problem_path, outdir);
        if (*verify) return run_verify(problem_path, solution_path);
        if (*linear) return run_linear(table_path, beta_plus, beta_minus);
        if (*oracle) return run_oracle(problem_path);
        if (*hilbert) return run_hilbert(in_path, out_path);
        if (*winding) return run_winding(in_path);
    } catch (const std::logic_error& e) {
        std::cerr << error_json("validation", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::cerr << error_json("numerical", e.what());
        return 3;
    }
    return 0;
}
