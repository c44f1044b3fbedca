#pragma once

#include <string>
#include <vector>

#include "mrh/solver.hpp"

namespace mrh {

struct SymbolSample {
    double theta_deg = 0.0;  // position along the linear arc, degrees
    cd value;
};

// Parsed `key = value` problem description. Angles are degrees here and
// radians everywhere else.
struct ProblemFile {
    int grid = 1024;
    bool standard_arc = true;
    double arc_plus_deg = 0.0;    // arg omega_plus
    double arc_minus_deg = 180.0; // arg omega_minus
    bool standard_symbol = true;  // a == i on the linear arc
    std::vector<SymbolSample> symbol_table;
    std::string fibers;  // preset or CSV path; required
    ZeroPrescription zeros;
    int steps = 16;
};

// Keys: grid, arc, symbol, fibers, zeros, steps. `#` starts a comment.
// Unknown or duplicate keys and malformed values are rejected with the
// line (and column, inside tuple lists) of the offense.
ProblemFile parse_problem(const std::string& path);

// circle:R | radial-cos:eps:k | radial-theta:eps, all on a 65 x 128 grid;
// anything else is read as a fiber CSV path.
RadialFiberFamily make_fibers(const std::string& descriptor);

struct ProblemInstance {
    MixedProblem problem;
    ZeroPrescription zeros;
    int steps = 16;
};

// Applies the MRH_GRID override, builds the fiber family, samples the
// symbol on the normalized grid and transports zeros through the arc
// normalization (bypassed exactly for the standard arc).
ProblemInstance instantiate(const ProblemFile& pf);

struct SolutionFileData {
    GridFunction f;
    GridFunction kappa;
};

// Columns: theta,re_f,im_f,re_kappa,im_kappa,residual. The residual column
// holds the weighted fiber misfit above and the normalized line misfit on
// the closed lower arc.
void write_solution_csv(const std::string& path, const MixedProblem& prob,
                        const SolutionBundle& bundle);
SolutionFileData read_solution_csv(const std::string& path);

std::string report_json(const SolutionBundle& bundle);

GridFunction read_value_csv(const std::string& path);    // theta,value
GridFunction read_complex_csv(const std::string& path);  // theta,re,im
void write_value_csv(const std::string& path, const GridFunction& u, const GridFunction& hu);

struct LinearTable {
    std::vector<cd> b_upper;      // nodes 0..n/2
    std::vector<double> rhs_upper;
    int n = 0;  // full grid size implied by the row count
};

LinearTable read_linear_table(const std::string& path);  // theta,re_b,im_b,rhs

}  // namespace mrh
