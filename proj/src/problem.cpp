#include "mrh/problem.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "mrh/corners.hpp"
#include "mrh/reduction.hpp"

namespace mrh {
namespace {
constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
    const size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    throw std::invalid_argument("problem file line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void parse_fail_at(int line, int column, const std::string& msg) {
    throw std::invalid_argument("problem file line " + std::to_string(line) + ", column " +
                                std::to_string(column) + ": " + msg);
}

// Scanner over one value string; columns are 1-based in the original line.
struct ValueScanner {
    const std::string& s;
    int line;
    int base_col;
    size_t i = 0;

    int col() const { return base_col + static_cast<int>(i) + 1; }
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool peek(char c) {
        skip_ws();
        return i < s.size() && s[i] == c;
    }
    void expect(char c) {
        skip_ws();
        if (i >= s.size() || s[i] != c)
            parse_fail_at(line, col(), std::string("expected '") + c + "'");
        ++i;
    }
    double number() {
        skip_ws();
        const char* begin = s.c_str() + i;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) parse_fail_at(line, col(), "expected a number");
        i += static_cast<size_t>(end - begin);
        return v;
    }
    void finish() {
        skip_ws();
        if (i != s.size()) parse_fail_at(line, col(), "unexpected trailing characters");
    }
};

std::vector<std::array<double, 3>> parse_triples(const std::string& s, int line, int base_col) {
    ValueScanner sc{s, line, base_col};
    std::vector<std::array<double, 3>> out;
    sc.expect('[');
    if (!sc.peek(']')) {
        while (true) {
            sc.expect('(');
            std::array<double, 3> t{};
            t[0] = sc.number();
            sc.expect(',');
            t[1] = sc.number();
            sc.expect(',');
            t[2] = sc.number();
            sc.expect(')');
            out.push_back(t);
            if (sc.peek(',')) {
                ++sc.i;
                continue;
            }
            break;
        }
    }
    sc.expect(']');
    sc.finish();
    return out;
}

int parse_int(const std::string& v, int line, const std::string& key) {
    size_t pos = 0;
    int out = 0;
    try {
        out = std::stoi(v, &pos);
    } catch (...) {
        pos = std::string::npos;
    }
    if (pos != v.size()) parse_fail(line, key + " must be an integer");
    return out;
}

double preset_param(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const double v = text.empty() ? 0.0 : std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size())
        throw std::invalid_argument("fiber preset: " + what + " is not a number: '" + text + "'");
    return v;
}

std::vector<double> node_residuals(const MixedProblem& prob, const SolutionBundle& b) {
    const int n = prob.grid();
    const int half = n / 2;
    std::vector<double> res(n, 0.0);
    for (int k = 1; k < half; ++k) {
        const double theta = 2.0 * kPi * k / n;
        const DefiningValues dv = eval_defining(prob.fibers, theta, b.f_boundary[k]);
        const double grad = std::abs(dv.rho_w);
        if (grad <= 1e-14)
            throw std::runtime_error("defining gradient vanishes on the upper arc");
        const double weight = corner_weight(theta, b.corner.delta_plus, b.corner.delta_minus);
        res[k] = std::abs(dv.rho) / (2.0 * grad * weight);
    }
    for (int k = half; k <= n; ++k) {
        const int j = k % n;
        const cd a = prob.symbol[j];
        res[j] = std::abs((std::conj(a) * b.f_boundary[j]).real()) / std::abs(a);
    }
    return res;
}

void check_uniform_thetas(const std::vector<double>& thetas, int n, const std::string& what) {
    for (int k = 0; k < static_cast<int>(thetas.size()); ++k)
        if (std::abs(thetas[k] - 2.0 * kPi * k / n) > 1e-9)
            throw std::invalid_argument(what + " line " + std::to_string(k + 2) +
                                        ": theta off the uniform grid");
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path, const std::string& header,
                                               int fields) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != header)
        throw std::invalid_argument(path + ": header must be '" + header + "'");
    std::vector<std::vector<double>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(line);
        if (body.empty()) continue;
        std::vector<double> row;
        ValueScanner sc{body, lineno, 0};
        for (int f = 0; f < fields; ++f) {
            if (f > 0) sc.expect(',');
            row.push_back(sc.number());
        }
        sc.finish();
        rows.push_back(std::move(row));
    }
    return rows;
}
}  // namespace

ProblemFile parse_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open problem file: " + path);
    ProblemFile pf;
    bool have_fibers = false;
    std::vector<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        const std::string body = hash == std::string::npos ? line : line.substr(0, hash);
        if (trim(body).empty()) continue;
        const size_t eq = body.find('=');
        if (eq == std::string::npos) parse_fail(lineno, "expected 'key = value'");
        const std::string key = trim(body.substr(0, eq));
        if (key.empty()) parse_fail(lineno, "empty key");
        size_t voff = eq + 1;
        while (voff < body.size() && std::isspace(static_cast<unsigned char>(body[voff]))) ++voff;
        const std::string value = trim(body.substr(voff));
        if (value.empty()) parse_fail(lineno, "empty value for key '" + key + "'");
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            parse_fail(lineno, "duplicate key '" + key + "'");
        seen.push_back(key);

        if (key == "grid") {
            pf.grid = parse_int(value, lineno, "grid");
            if (pf.grid < 64 || !is_power_of_two(pf.grid))
                parse_fail(lineno, "grid must be a power of two, at least 64");
        } else if (key == "steps") {
            pf.steps = parse_int(value, lineno, "steps");
            if (pf.steps < 1) parse_fail(lineno, "steps must be positive");
        } else if (key == "arc") {
            if (value != "standard") {
                ValueScanner sc{value, lineno, static_cast<int>(voff)};
                pf.arc_plus_deg = sc.number();
                sc.expect(',');
                pf.arc_minus_deg = sc.number();
                sc.finish();
                pf.standard_arc = false;
                const cd wp = std::polar(1.0, pf.arc_plus_deg * kPi / 180.0);
                const cd wm = std::polar(1.0, pf.arc_minus_deg * kPi / 180.0);
                if (std::abs(wp - wm) < 1e-9) parse_fail(lineno, "arc endpoints coincide");
            }
        } else if (key == "symbol") {
            if (value != "standard") {
                const auto triples = parse_triples(value, lineno, static_cast<int>(voff));
                if (triples.size() < 2) parse_fail(lineno, "symbol table needs at least two samples");
                for (size_t i = 1; i < triples.size(); ++i)
                    if (triples[i][0] <= triples[i - 1][0])
                        parse_fail(lineno, "symbol table angles must be strictly increasing");
                pf.standard_symbol = false;
                for (const auto& t : triples)
                    pf.symbol_table.push_back(SymbolSample{t[0], cd(t[1], t[2])});
            }
        } else if (key == "fibers") {
            pf.fibers = value;
            have_fibers = true;
        } else if (key == "zeros") {
            for (const auto& t : parse_triples(value, lineno, static_cast<int>(voff))) {
                if (t[2] < 0.5 || std::abs(t[2] - std::round(t[2])) > 1e-9)
                    parse_fail(lineno, "zero multiplicity must be a positive integer");
                pf.zeros.zeros.push_back(
                    PrescribedZero{t[0], t[1], static_cast<int>(std::lround(t[2]))});
            }
            try {
                pf.zeros.validate();
            } catch (const std::exception& e) {
                parse_fail(lineno, e.what());
            }
        } else {
            parse_fail(lineno, "unknown key '" + key + "'");
        }
    }
    if (!have_fibers) throw std::invalid_argument("problem file: fibers key is required");
    return pf;
}

RadialFiberFamily make_fibers(const std::string& descriptor) {
    constexpr int kRows = 65;
    constexpr int kCols = 128;
    if (descriptor.rfind("circle:", 0) == 0) {
        const double r = preset_param(descriptor.substr(7), "radius");
        if (r <= 0.0) throw std::invalid_argument("fiber preset: radius must be positive");
        return RadialFiberFamily::circles(kRows, kCols, r);
    }
    if (descriptor.rfind("radial-cos:", 0) == 0) {
        const std::string rest = descriptor.substr(11);
        const size_t c = rest.find(':');
        if (c == std::string::npos)
            throw std::invalid_argument("fiber preset: radial-cos needs eps and k");
        const double eps = preset_param(rest.substr(0, c), "eps");
        const double kf = preset_param(rest.substr(c + 1), "k");
        if (kf < 0.0 || std::abs(kf - std::round(kf)) > 1e-9)
            throw std::invalid_argument("fiber preset: k must be a nonnegative integer");
        return RadialFiberFamily::radial_cos(kRows, kCols, eps, static_cast<int>(std::lround(kf)));
    }
    if (descriptor.rfind("radial-theta:", 0) == 0)
        return RadialFiberFamily::radial_theta(kRows, kCols,
                                               preset_param(descriptor.substr(13), "eps"));
    return RadialFiberFamily::read_csv(descriptor);
}

ProblemInstance instantiate(const ProblemFile& pf) {
    int n = pf.grid;
    if (const char* env = std::getenv("MRH_GRID")) {
        const std::string e(env);
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(e, &pos);
        } catch (...) {
            pos = std::string::npos;
        }
        if (pos != e.size()) throw std::invalid_argument("MRH_GRID must be an integer");
        n = v;
    }
    if (n < 64 || !is_power_of_two(n))
        throw std::invalid_argument("grid size must be a power of two, at least 64");
    const int half = n / 2;

    RadialFiberFamily fam = make_fibers(pf.fibers);
    GridFunction a(n);
    for (int k = 0; k < n; ++k) a[k] = cd(0.0, 1.0);
    ZeroPrescription zeros = pf.zeros;
    cd omega_plus(1.0, 0.0);
    cd omega_minus(-1.0, 0.0);
    Mobius norm;
    if (!pf.standard_arc) {
        omega_plus = std::polar(1.0, pf.arc_plus_deg * kPi / 180.0);
        omega_minus = std::polar(1.0, pf.arc_minus_deg * kPi / 180.0);
        norm = normalize_arc(omega_plus, omega_minus);
        for (auto& z : zeros.zeros) {
            const cd zt = norm.apply(cd(z.re, z.im));
            z.re = zt.real();
            z.im = std::abs(zt.imag()) < 1e-12 ? 0.0 : zt.imag();
        }
    }

    if (!pf.standard_symbol) {
        const double start_deg = pf.standard_arc ? 180.0 : pf.arc_minus_deg;
        const double end_deg = pf.standard_arc ? 0.0 : pf.arc_plus_deg;
        double span = std::fmod(end_deg - start_deg, 360.0);
        if (span <= 0.0) span += 360.0;

        const double shift =
            360.0 * std::round((start_deg - pf.symbol_table.front().theta_deg) / 360.0);
        std::vector<double> rel;
        std::vector<cd> vals;
        for (const auto& s : pf.symbol_table) {
            rel.push_back(s.theta_deg + shift - start_deg);
            vals.push_back(s.value);
        }
        if (rel.front() > 1e-9 || rel.back() < span - 1e-9)
            throw std::invalid_argument("symbol table does not cover the linear arc");

        const Mobius inv = norm.inverse();
        for (int k = half; k <= n; ++k) {
            const cd xi = std::polar(1.0, 2.0 * kPi * k / n);
            const cd zeta = pf.standard_arc ? xi : inv.apply(xi);
            double u = std::arg(zeta) * 180.0 / kPi - start_deg;
            u = std::fmod(u, 360.0);
            if (u < 0.0) u += 360.0;
            if (u > span) u = u >= 360.0 - 1e-6 ? 0.0 : span;
            cd value;
            if (u <= rel.front()) {
                value = vals.front();
            } else if (u >= rel.back()) {
                value = vals.back();
            } else {
                const size_t s =
                    std::upper_bound(rel.begin(), rel.end(), u) - rel.begin();
                const double t = (u - rel[s - 1]) / (rel[s] - rel[s - 1]);
                value = vals[s - 1] * (1.0 - t) + vals[s] * t;
            }
            a[k % n] = value;
        }
    }

    return ProblemInstance{MixedProblem{std::move(a), std::move(fam), omega_plus, omega_minus},
                           std::move(zeros), pf.steps};
}

void write_solution_csv(const std::string& path, const MixedProblem& prob,
                        const SolutionBundle& bundle) {
    const int n = prob.grid();
    if (bundle.f_boundary.size() != n || bundle.kappa.size() != n)
        throw std::invalid_argument("bundle grid does not match the problem grid");
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    const std::vector<double> res = node_residuals(prob, bundle);
    out << "theta,re_f,im_f,re_kappa,im_kappa,residual\n";
    char buf[256];
    for (int k = 0; k < n; ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      bundle.f_boundary.theta(k), bundle.f_boundary[k].real(),
                      bundle.f_boundary[k].imag(), bundle.kappa[k].real(),
                      bundle.kappa[k].imag(), res[k]);
        out << buf;
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

SolutionFileData read_solution_csv(const std::string& path) {
    const auto rows = read_csv_rows(path, "theta,re_f,im_f,re_kappa,im_kappa,residual", 6);
    const int n = static_cast<int>(rows.size());
    if (n < 64 || !is_power_of_two(n))
        throw std::invalid_argument(path + ": row count must be a power of two, at least 64");
    std::vector<double> thetas;
    std::vector<cd> fv(n), kv(n);
    for (int k = 0; k < n; ++k) {
        thetas.push_back(rows[k][0]);
        fv[k] = cd(rows[k][1], rows[k][2]);
        kv[k] = cd(rows[k][3], rows[k][4]);
    }
    check_uniform_thetas(thetas, n, path);
    return SolutionFileData{GridFunction(n, std::move(fv)), GridFunction(n, std::move(kv))};
}

std::string report_json(const SolutionBundle& bundle) {
    nlohmann::ordered_json j;
    j["beta_plus"] = bundle.corner.beta_plus;
    j["beta_minus"] = bundle.corner.beta_minus;
    j["delta_plus"] = bundle.corner.delta_plus;
    j["delta_minus"] = bundle.corner.delta_minus;
    j["beta_cap"] = bundle.corner.beta_cap;
    j["winding"] = bundle.index_two_n / 2.0;
    j["residual_sup"] =
        std::max(bundle.residuals.sup_residual_upper, bundle.residuals.sup_residual_lower);
    j["zero_count"] = bundle.residuals.zero_count;
    j["holder_fit_plus"] = bundle.residuals.holder_fit_plus;
    j["holder_fit_minus"] = bundle.residuals.holder_fit_minus;
    nlohmann::ordered_json tr = nlohmann::ordered_json::array();
    for (const auto& s : bundle.trace) tr.push_back({s.t, s.iterations, s.residual});
    j["trace"] = tr;
    return j.dump(2) + "\n";
}

GridFunction read_value_csv(const std::string& path) {
    const auto rows = read_csv_rows(path, "theta,value", 2);
    const int n = static_cast<int>(rows.size());
    if (n < 64 || !is_power_of_two(n))
        throw std::invalid_argument(path + ": row count must be a power of two, at least 64");
    std::vector<double> thetas;
    std::vector<cd> v(n);
    for (int k = 0; k < n; ++k) {
        thetas.push_back(rows[k][0]);
        v[k] = cd(rows[k][1], 0.0);
    }
    check_uniform_thetas(thetas, n, path);
    return GridFunction(n, std::move(v));
}

GridFunction read_complex_csv(const std::string& path) {
    const auto rows = read_csv_rows(path, "theta,re,im", 3);
    const int n = static_cast<int>(rows.size());
    if (n < 64 || !is_power_of_two(n))
        throw std::invalid_argument(path + ": row count must be a power of two, at least 64");
    std::vector<double> thetas;
    std::vector<cd> v(n);
    for (int k = 0; k < n; ++k) {
        thetas.push_back(rows[k][0]);
        v[k] = cd(rows[k][1], rows[k][2]);
    }
    check_uniform_thetas(thetas, n, path);
    return GridFunction(n, std::move(v));
}

void write_value_csv(const std::string& path, const GridFunction& u, const GridFunction& hu) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << "theta,value,transform\n";
    char buf[160];
    for (int k = 0; k < u.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", u.theta(k), u[k].real(),
                      hu[k].real());
        out << buf;
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

LinearTable read_linear_table(const std::string& path) {
    const auto rows = read_csv_rows(path, "theta,re_b,im_b,rhs", 4);
    const int count = static_cast<int>(rows.size());
    const int n = 2 * (count - 1);
    if (count < 33 || !is_power_of_two(n))
        throw std::invalid_argument(path + ": need n/2 + 1 upper-arc rows for a power-of-two n");
    LinearTable table;
    table.n = n;
    std::vector<double> thetas;
    for (int k = 0; k < count; ++k) {
        thetas.push_back(rows[k][0]);
        table.b_upper.push_back(cd(rows[k][1], rows[k][2]));
        table.rhs_upper.push_back(rows[k][3]);
    }
    check_uniform_thetas(thetas, n, path);
    return table;
}

}  // namespace mrh
