// Command-line front end: estimate quadratic forms, run the symmetry
// detectors on the experiment cases, and tabulate the iteration bounds.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ritzsym/ritzsym.hpp"

namespace {

using namespace ritzsym;
using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::vector<double> read_vector_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open vector file: " + path);
    std::vector<double> v;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t pos = 0;
            double x = std::stod(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            v.push_back(x);
        } catch (const std::exception&) {
            throw IoError("malformed vector file " + path + ": bad token '" + tok + "'");
        }
    }
    if (v.empty()) throw IoError("vector file " + path + " holds no values");
    return v;
}

struct MatrixSource {
    SymmetricOperator a;
    std::optional<int> case_id;
    std::vector<double> case_vector;
    std::string label;
};

// --matrix accepts either a Matrix Market path or case:N. Case 4 additionally
// needs --case4-matrix pointing at a local nd3k file.
MatrixSource resolve_matrix(const std::string& spec, const std::string& case4_path) {
    if (spec.rfind("case:", 0) == 0) {
        int id = 0;
        try {
            id = std::stoi(spec.substr(5));
        } catch (const std::exception&) {
            throw InvalidInput("bad case spec '" + spec + "' (use case:1..case:4)");
        }
        CaseData cd = build_case(CaseSpec::of(id, id == 4 ? case4_path : std::string()));
        return {std::move(cd.A), id, std::move(cd.v), spec};
    }
    return {read_matrix_market(spec), std::nullopt, {}, spec};
}

std::vector<double> resolve_vector(const std::string& spec, const MatrixSource& m) {
    if (spec == "case") {
        if (!m.case_id)
            throw InvalidInput("--vector case requires --matrix case:N");
        return m.case_vector;
    }
    if (spec == "ones") return std::vector<double>(m.a.n(), 1.0);
    return read_vector_file(spec);
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    write_file_atomic(out_path, content);
}

// ---------------------------------------------------------------------------

int run_estimate(const std::string& matrix_spec, const std::string& case4_path,
                 const std::string& vector_spec, const std::string& f_spec, std::size_t m,
                 const std::string& reorth_spec, const std::string& out_path,
                 const std::string& format, bool with_timings) {
    Timer timer;
    if (reorth_spec != "full" && reorth_spec != "none")
        throw InvalidInput("--reorth must be 'full' or 'none'");
    MatrixFunction f = MatrixFunction::parse(f_spec);
    MatrixSource src = resolve_matrix(matrix_spec, case4_path);
    std::vector<double> u = resolve_vector(vector_spec, src);

    QuadraticFormEstimate est = estimate_quadratic_form(
        src.a, u, f, m, reorth_spec == "full" ? Reorth::Full : Reorth::None);

    if (format == "csv") {
        std::string csv = "value,norm_u_squared,m,steps_completed,breakdown\n";
        csv += format_e17(est.value) + "," + format_e17(est.norm_u_squared) + "," +
               std::to_string(m) + "," + std::to_string(est.steps_completed) + "," +
               (est.breakdown ? "true" : "false") + "\n";
        emit(csv, out_path);
        return 0;
    }

    json rep;
    rep["command"] = "estimate";
    rep["inputs"] = {{"matrix", src.label},
                     {"vector", vector_spec},
                     {"f", f.name()},
                     {"m", m},
                     {"reorth", reorth_spec}};
    rep["result"] = {{"value", est.value},
                     {"norm_u_squared", est.norm_u_squared},
                     {"steps_completed", est.steps_completed},
                     {"breakdown", est.breakdown}};
    rep["rule"] = rule_to_json(est.rule);
    rep["tridiagonal"] = tridiagonal_to_json(est.T);
    if (with_timings) rep["timings"] = {{"total_seconds", timer.seconds()}};
    emit(json_dump_deterministic(rep), out_path);
    return 0;
}

// ---------------------------------------------------------------------------

int run_symmetry(int case_id, const std::string& matrix_spec, const std::string& case4_path,
                 const std::string& vector_spec, std::size_t m, double tol,
                 const std::string& out_dir, std::string prefix, bool cap_override,
                 bool with_timings) {
    Timer timer;
    MatrixSource src = case_id > 0 ? resolve_matrix("case:" + std::to_string(case_id), case4_path)
                                   : resolve_matrix(matrix_spec, case4_path);
    std::vector<double> u = case_id > 0 && vector_spec == "case"
                                ? src.case_vector
                                : resolve_vector(vector_spec, src);
    if (prefix.empty()) prefix = case_id > 0 ? "case" + std::to_string(case_id) : "run";

    SymmetryOptions opts;
    opts.tol = tol;
    const std::size_t cap = cap_override ? src.a.n() : dense_cap();
    const bool dense_ok = src.a.n() <= cap;

    LanczosResult run = lanczos(src.a, u, m);
    QuadratureRule rule = golub_welsch(run.T);

    SymmetryReport rep;
    std::optional<SpectralMeasure> measure;
    if (dense_ok) {
        rep = check_sufficient_condition(src.a, u, opts, cap);
        measure = spectral_measure(src.a, u, cap);
    }
    SymmetryReport ritz = ritz_symmetry_check(rule, run.T, opts, rep.spectrum_center);
    ritz.condition_evaluated = rep.condition_evaluated;
    ritz.spectrum_center = rep.spectrum_center ? rep.spectrum_center : ritz.spectrum_center;
    ritz.spectrum_symmetric = rep.spectrum_symmetric;
    ritz.mu_palindrome = rep.mu_palindrome;
    ritz.mu_palindrome_deviation = rep.mu_palindrome_deviation;

    json jrep;
    jrep["command"] = "symmetry";
    jrep["inputs"] = {{"matrix", src.label},
                      {"vector", case_id > 0 && vector_spec == "case" ? "case" : vector_spec},
                      {"m", m},
                      {"tol", tol},
                      {"n", src.a.n()},
                      {"dense_condition_available", dense_ok}};
    jrep["symmetry"] = symmetry_report_to_json(ritz);
    jrep["rule"] = rule_to_json(rule);
    jrep["tridiagonal"] = tridiagonal_to_json(run.T);
    if (measure) jrep["measure"] = measure_to_json(*measure);
    if (with_timings) jrep["timings"] = {{"total_seconds", timer.seconds()}};

    namespace fs = std::filesystem;
    fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    write_file_atomic(dir / (prefix + "_nodes.csv"), rule_csv(rule));
    if (measure) write_file_atomic(dir / (prefix + "_measure.csv"), measure_steps_csv(*measure));
    write_file_atomic(dir / (prefix + "_report.json"), json_dump_deterministic(jrep));

    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::cout << prefix << ": spectrum symmetric=" << (dense_ok ? yn(ritz.spectrum_symmetric) : "n/a")
              << ", mu palindrome=" << (dense_ok ? yn(ritz.mu_palindrome) : "n/a")
              << ", ritz symmetric=" << yn(ritz.ritz_symmetric);
    if (ritz.spectrum_center) std::cout << ", center=" << format_g17(*ritz.spectrum_center);
    std::cout << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

int run_bounds(const std::string& grid_spec, const std::string& f_spec, double epsilon,
               bool epsilon_given, double lambda_min_value, double lambda_max_value,
               bool lambda_max_given, std::optional<double> rho_override, std::size_t samples,
               const std::string& out_path, const std::string& format) {
    std::vector<double> kappas;
    if (grid_spec == "paper") {
        kappas = paper_kappa_grid();
    } else {
        std::stringstream ss(grid_spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                std::size_t pos = 0;
                double k = std::stod(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
                kappas.push_back(k);
            } catch (const std::exception&) {
                throw InvalidInput("--kappa-grid: bad value '" + tok + "'");
            }
        }
        if (kappas.empty()) throw InvalidInput("--kappa-grid: empty grid");
    }

    const bool with_floors = !f_spec.empty();
    std::optional<MatrixFunction> f;
    if (with_floors) {
        f = MatrixFunction::parse(f_spec);
        if (!epsilon_given)
            throw InvalidInput("--f requires --epsilon to compute iteration floors");
        if (lambda_max_given) {
            if (kappas.size() != 1)
                throw InvalidInput("--lambda-max is only meaningful for a single-kappa grid");
            double implied = lambda_max_value / lambda_min_value;
            if (std::fabs(implied - kappas[0]) > 1e-9 * kappas[0])
                throw InvalidInput("--lambda-max / --lambda-min = " + std::to_string(implied) +
                                   " conflicts with kappa = " + std::to_string(kappas[0]));
        }
    } else if (epsilon_given) {
        throw InvalidInput("--epsilon requires --f");
    }

    std::vector<BoundsCsvRow> rows;
    rows.reserve(kappas.size());
    for (double k : kappas) {
        BoundsCsvRow row;
        row.kappa = k;
        try {
            row.gap = m_star(k);
            if (with_floors)
                row.floors = bounds_report(k, *f, epsilon, lambda_min_value, samples, rho_override);
            row.ok = true;
        } catch (const DomainError& e) {
            row.ok = false;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }

    if (format == "json") {
        json out = json::array();
        for (const auto& r : rows) {
            json jr;
            jr["kappa"] = r.kappa;
            if (r.ok) {
                jr["m_star_lower"] = r.gap.lower;
                jr["m_star_upper"] = r.gap.upper;
                jr["m_star_average"] = r.gap.average();
                jr["m_star_exact"] = r.gap.exact;
                jr["rho"] = r.floors ? r.floors->rho : r.gap.rho;
                if (r.floors) {
                    jr["m_rho"] = r.floors->m_rho_value;
                    jr["epsilon"] = r.floors->epsilon;
                    jr["m_sym_floor"] = r.floors->sym.floor;
                    jr["m_sym_raw"] = r.floors->sym.raw;
                    jr["m_asym_floor"] = r.floors->asym.floor;
                    jr["m_asym_raw"] = r.floors->asym.raw;
                }
            } else {
                jr["error"] = r.error;
            }
            out.push_back(jr);
        }
        emit(json_dump_deterministic(out), out_path);
        return 0;
    }
    emit(bounds_csv(rows, with_floors), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lanczos quadrature with Ritz-value symmetry detectors"};
    app.require_subcommand(1);

    // estimate
    auto* est = app.add_subcommand("estimate", "Estimate u^T f(A) u by m-step Lanczos quadrature");
    std::string e_matrix, e_vector = "ones", e_f, e_reorth = "full", e_out, e_format = "json";
    std::string e_case4;
    std::size_t e_m = 10;
    bool e_timings = false;
    est->add_option("--matrix", e_matrix, "Matrix Market path or case:N")->required();
    est->add_option("--vector", e_vector, "vector file path, 'ones', or 'case'");
    est->add_option("--f", e_f, "exp|log|inv|sqrt|power:p|poly:c0,c1,...|scaled-exp:b")->required();
    est->add_option("--m", e_m, "Lanczos steps")->required();
    est->add_option("--reorth", e_reorth, "full|none (default full)");
    est->add_option("--out", e_out, "output path (default stdout)");
    est->add_option("--format", e_format, "json|csv (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
    est->add_option("--case4-matrix", e_case4, "local matrix file used by case:4");
    est->add_flag("--timings", e_timings, "include wall-clock timings in the report");

    // symmetry
    auto* sym = app.add_subcommand("symmetry",
                                   "Measure, Ritz nodes, and the symmetry report for a case");
    int s_case = 0;
    std::string s_matrix, s_vector = "case", s_outdir = ".", s_prefix, s_case4;
    std::size_t s_m = 10;
    double s_tol = 1e-8;
    bool s_override = false, s_timings = false;
    sym->add_option("--case", s_case, "experiment case 1..4")->check(CLI::Range(1, 4));
    sym->add_option("--matrix", s_matrix, "Matrix Market path (alternative to --case)");
    sym->add_option("--vector", s_vector, "vector file path, 'ones', or 'case' (default)");
    sym->add_option("--m", s_m, "Lanczos steps (default 10)");
    sym->add_option("--tol", s_tol, "symmetry tolerance (default 1e-8)");
    sym->add_option("--out-dir", s_outdir, "directory for the CSV/JSON outputs (default .)");
    sym->add_option("--prefix", s_prefix, "output file prefix (default caseN or run)");
    sym->add_option("--case4-matrix", s_case4, "local matrix file used by case 4");
    sym->add_flag("--allow-dense-cap-override", s_override,
                  "lift the dense eigendecomposition cap for this run");
    sym->add_flag("--timings", s_timings, "include wall-clock timings in the report");

    // bounds
    auto* bnd = app.add_subcommand("bounds", "m* gap table over a condition-number grid");
    std::string b_grid, b_f, b_out, b_format = "csv";
    double b_eps = 0.0, b_lmin = 1.0, b_lmax = 0.0, b_rho = 0.0;
    std::size_t b_samples = 4096;
    bnd->add_option("--kappa-grid", b_grid, "'paper' or comma-separated kappa values")->required();
    bnd->add_option("--epsilon", b_eps, "target accuracy for the iteration floors");
    bnd->add_option("--f", b_f, "matrix function for M_rho (enables the floors)");
    bnd->add_option("--lambda-min", b_lmin, "spectrum lower end (default 1); lambda_max = kappa*lambda_min");
    bnd->add_option("--lambda-max", b_lmax, "explicit upper end, single-kappa grids only");
    bnd->add_option("--rho", b_rho, "override the elliptical radius (default (sqrt(k)+1)/(sqrt(k)-1))");
    bnd->add_option("--samples", b_samples, "ellipse boundary samples (default 4096)");
    bnd->add_option("--out", b_out, "output path (default stdout)");
    bnd->add_option("--format", b_format, "csv|json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (est->parsed())
            return run_estimate(e_matrix, e_case4, e_vector, e_f, e_m, e_reorth, e_out, e_format,
                                e_timings);
        if (sym->parsed()) {
            if (s_case == 0 && s_matrix.empty())
                throw InvalidInput("symmetry: give --case N or --matrix <path>");
            if (s_case == 0 && s_vector == "case")
                throw InvalidInput("symmetry: --vector case requires --case N");
            return run_symmetry(s_case, s_matrix, s_case4, s_vector, s_m, s_tol, s_outdir,
                                s_prefix, s_override, s_timings);
        }
        if (bnd->parsed())
            return run_bounds(b_grid, b_f, b_eps, bnd->count("--epsilon") > 0, b_lmin, b_lmax,
                              bnd->count("--lambda-max") > 0,
                              bnd->count("--rho") > 0 ? std::optional<double>(b_rho)
                                                      : std::nullopt,
                              b_samples, b_out, b_format);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
