// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code is the number of
// failed criteria.
//
// Usage: acceptance --cli <path-to-ritzsym-binary> --golden <golden-dir>
// Set RITZSYM_ND3K to a local nd3k .mtx file to enable the opt-in case-4 leg.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ritzsym/ritzsym.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace ritzsym;

namespace {

struct Failure {
    std::string message;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw Failure{message};
}

std::string g_cli;
fs::path g_golden;
fs::path g_workdir;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    require(in.good(), "cannot read " + p.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

int run_cli(const std::string& args) {
    std::string cmd = "\"" + g_cli + "\" " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// --- criterion 1: Theorem 3.7 reproduction on case 1 ---------------------

void criterion_theorem_case1() {
    auto cd = build_case(CaseSpec::of(1));
    auto run = lanczos(cd.A, cd.v, 10);
    for (double alpha : run.T.alphas)
        require(std::fabs(alpha - 0.51) <= 1e-9,
                "alpha deviates from 0.51 by " + std::to_string(std::fabs(alpha - 0.51)));
    auto rule = golub_welsch(run.T);
    for (std::size_t k = 0; k < 5; ++k) {
        double node_dev = std::fabs(rule.nodes[k] + rule.nodes[9 - k] - 2.0 * 0.51);
        double weight_dev = std::fabs(rule.weights[k] - rule.weights[9 - k]);
        require(node_dev <= 1e-8, "node pair deviation " + std::to_string(node_dev));
        require(weight_dev <= 1e-8, "weight pair deviation " + std::to_string(weight_dev));
    }
}

// --- criterion 2: Table 1 grid --------------------------------------------

void criterion_table1() {
    struct Row {
        bool spectrum, palindrome, ritz;
    };
    const Row expected[3] = {{true, true, true}, {false, true, false}, {true, false, false}};
    for (int id = 1; id <= 3; ++id) {
        auto cd = build_case(CaseSpec::of(id));
        auto cond = check_sufficient_condition(cd.A, cd.v);
        auto run = lanczos(cd.A, cd.v, 10);
        auto rep = ritz_symmetry_check(golub_welsch(run.T), run.T, {}, cond.spectrum_center);
        const Row got{cond.spectrum_symmetric, cond.mu_palindrome, rep.ritz_symmetric};
        const Row want = expected[id - 1];
        auto yn = [](bool b) { return b ? std::string("Yes") : std::string("No"); };
        require(got.spectrum == want.spectrum && got.palindrome == want.palindrome &&
                    got.ritz == want.ritz,
                "case " + std::to_string(id) + " produced (" + yn(got.spectrum) + "," +
                    yn(got.palindrome) + "," + yn(got.ritz) + ")");
    }

    if (const char* nd3k = std::getenv("RITZSYM_ND3K")) {
        auto cd = build_case(CaseSpec::of(4, nd3k));
        auto run = lanczos(cd.A, cd.v, 10);
        auto rep = ritz_symmetry_check(golub_welsch(run.T), run.T);
        require(!rep.ritz_symmetric, "case 4 Ritz values unexpectedly symmetric");
        auto cond = check_sufficient_condition(cd.A, cd.v, {}, cd.A.n());
        require(!cond.spectrum_symmetric, "case 4 spectrum unexpectedly symmetric");
        require(!cond.mu_palindrome, "case 4 mu_1 unexpectedly a palindrome");
    } else {
        std::cout << "          (case 4 skipped: RITZSYM_ND3K not set)\n";
    }
}

// --- criterion 3: m* at kappa = 1e5 ----------------------------------------

void criterion_mstar_paper_point() {
    auto gap = m_star(1e5);
    require(gap.exact >= 54.0 && gap.exact <= 56.0,
            "exact m* = " + std::to_string(gap.exact) + " outside [54, 56]");
    require(std::fabs(gap.lower - 39.28) <= 1e-2,
            "lower bound " + std::to_string(gap.lower) + " not within 1e-2 of 39.28");
    require(std::fabs(gap.upper - 78.81) <= 1e-2,
            "upper bound " + std::to_string(gap.upper) + " not within 1e-2 of 78.81");
}

// --- criterion 4: Corollary sandwich over 1000 kappas ----------------------

void criterion_sandwich() {
    std::mt19937_64 g(20240901);
    std::uniform_real_distribution<double> expo(std::log(1.001), std::log(1e8));
    for (int rep = 0; rep < 1000; ++rep) {
        double kappa = std::exp(expo(g));
        auto gap = m_star(kappa);
        double slack_lo = 1e-14 * std::max(1.0, std::fabs(gap.exact));
        double slack_hi = 1e-14 * std::max(1.0, std::fabs(gap.upper));
        require(gap.lower <= gap.exact + slack_lo,
                "lower > exact at kappa = " + std::to_string(kappa));
        require(gap.exact <= gap.upper + slack_hi,
                "exact > upper at kappa = " + std::to_string(kappa));
    }
}

// --- criterion 5: interlacing ----------------------------------------------

void criterion_interlacing() {
    std::mt19937_64 g(5150);
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t n = 2 + g() % 29;  // n <= 30
        auto a = SymmetricOperator::dense(testsupport::random_symmetric_matrix(g, n));
        auto lambda = full_eigen(a).eigenvalues;
        auto u = testsupport::random_vector(g, n);
        for (std::size_t m = 1; m <= n; ++m) {
            auto run = lanczos(a, u, m);
            require(!run.breakdown, "unexpected breakdown");
            auto theta = tridiag_eigen(run.T, EigenvectorMode::None).eigenvalues;
            for (std::size_t k = 0; k < m; ++k) {
                require(lambda[k] <= theta[k] + 1e-10,
                        "lower interlacing violated at n=" + std::to_string(n) +
                            " m=" + std::to_string(m));
                require(theta[k] <= lambda[k + n - m] + 1e-10,
                        "upper interlacing violated at n=" + std::to_string(n) +
                            " m=" + std::to_string(m));
            }
        }
    }
}

// --- criterion 6: Gauss exactness ------------------------------------------

void criterion_gauss_exactness() {
    std::mt19937_64 g(6001);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::size_t n = 8 + g() % 13;  // n <= 20
        auto a = testsupport::random_spd(g, n, 0.4, 2.4);
        auto u = testsupport::random_vector(g, n);
        std::size_t m = 1 + g() % 8;  // m <= 8
        std::vector<double> cs(2 * m);
        for (double& c : cs) c = coeff(g);
        auto f = MatrixFunction::polynomial(cs);
        double est = estimate_quadratic_form(a, u, f, m).value;
        double oracle = quadratic_form_oracle(a, u, f);
        require(std::fabs(est - oracle) <= 1e-8 * std::max(1.0, std::fabs(oracle)),
                "quadrature missed the oracle by " + std::to_string(std::fabs(est - oracle)));
    }
}

// --- criterion 7: Jordan-Wielandt ------------------------------------------

void criterion_jordan_wielandt() {
    std::mt19937_64 g(7007);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::size_t n1 = 1 + g() % 8, n2 = 1 + g() % 6;
        Matrix b(n1, n2);
        for (double& x : b.data) x = d(g);
        double gamma = rep % 2 == 0 ? 0.0 : d(g);

        auto a = jordan_wielandt_assemble(b, gamma);
        auto pairs = jordan_wielandt_eigenpairs(b, gamma);
        require(pairs.size() == n1 + n2, "wrong eigenpair count");
        auto dense = full_eigen(a).eigenvalues;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            require(std::fabs(pairs[i].value - dense[i]) <= 1e-10,
                    "analytic spectrum off by " +
                        std::to_string(std::fabs(pairs[i].value - dense[i])));
            auto az = a.apply(pairs[i].vector);
            axpy(-pairs[i].value, pairs[i].vector, az);
            require(norm2(az) <= 1e-10, "residual " + std::to_string(norm2(az)));
        }
    }
}

// --- criterion 8: red-black proof route -------------------------------------

void criterion_red_black_route() {
    std::mt19937_64 g(8008);
    std::uniform_real_distribution<double> centers(-1.5, 1.5), coeff(0.2, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t n = 3 + g() % 10;
        auto eigs = testsupport::symmetric_spectrum(g, n, centers(g));
        auto q = testsupport::random_orthonormal(g, n);
        std::vector<double> xi((n + 1) / 2);
        for (double& x : xi) x = (g() % 2 ? 1.0 : -1.0) * coeff(g);
        std::vector<int> signs(n / 2);
        for (int& s : signs) s = g() % 2 ? 1 : -1;
        auto a = testsupport::similarity_from_eigen(q, eigs);
        auto v = palindrome_vector_sample(q, xi, signs);

        std::size_t m = 1 + g() % n;
        auto run = lanczos(a, v, m);
        if (run.breakdown) continue;

        auto rb = red_black_permute(run.T);
        auto pairs = jordan_wielandt_eigenpairs(rb.b, rb.gamma);
        auto direct = tridiag_eigen(run.T, EigenvectorMode::None).eigenvalues;
        require(pairs.size() == direct.size(), "eigenvalue count mismatch");
        for (std::size_t i = 0; i < pairs.size(); ++i)
            require(std::fabs(pairs[i].value - direct[i]) <= 1e-9,
                    "route mismatch " + std::to_string(std::fabs(pairs[i].value - direct[i])));
    }
}

// --- criterion 9: golden-file regeneration ----------------------------------

void criterion_golden_files() {
    fs::path outdir = g_workdir / "golden_check";
    fs::remove_all(outdir);
    fs::create_directories(outdir);

    for (int id = 1; id <= 3; ++id) {
        int code = run_cli("symmetry --case " + std::to_string(id) + " --m 10 --out-dir \"" +
                           outdir.string() + "\"");
        require(code == 0, "symmetry --case " + std::to_string(id) + " exited with " +
                               std::to_string(code));
    }
    int code = run_cli("bounds --kappa-grid paper --out \"" +
                       (outdir / "bounds_paper.csv").string() + "\"");
    require(code == 0, "bounds --kappa-grid paper exited with " + std::to_string(code));

    const char* files[] = {"case1_measure.csv",  "case1_nodes.csv",  "case2_measure.csv",
                           "case2_nodes.csv",    "case3_measure.csv", "case3_nodes.csv",
                           "bounds_paper.csv",   "case1_report.json", "case2_report.json",
                           "case3_report.json"};
    for (const char* f : files) {
        fs::path produced = outdir / f;
        fs::path golden = g_golden / f;
        require(fs::exists(produced), std::string(f) + " was not produced");
        require(fs::exists(golden), "golden file missing: " + golden.string());
        require(slurp(produced) == slurp(golden),
                std::string(f) + " differs from the checked-in golden copy");
    }
}

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<void()> run;
};

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--cli") g_cli = argv[i + 1];
        else if (flag == "--golden") g_golden = argv[i + 1];
        else if (flag == "--workdir") g_workdir = argv[i + 1];
    }
    if (g_cli.empty() || g_golden.empty()) {
        std::cerr << "usage: acceptance --cli <ritzsym-binary> --golden <dir> [--workdir <dir>]\n";
        return 64;
    }
    if (g_workdir.empty()) g_workdir = fs::temp_directory_path() / "ritzsym_acceptance";
    fs::create_directories(g_workdir);

    const std::vector<Criterion> criteria = {
        {1, "Case-1 rule: constant diagonal 0.51, paired nodes and weights", 1.0,
         criterion_theorem_case1},
        {2, "Case grid verdicts (spectrum, palindrome, Ritz symmetry)", 5.0, criterion_table1},
        {3, "m* gap at kappa = 1e5 with its closed-form bounds", 1.0,
         criterion_mstar_paper_point},
        {4, "Gap sandwich over 1000 log-uniform condition numbers", 1.0, criterion_sandwich},
        {5, "Eigenvalue interlacing of Ritz values, 100 matrices", 30.0, criterion_interlacing},
        {6, "Gauss exactness up to degree 2m-1, 50 SPD instances", 30.0,
         criterion_gauss_exactness},
        {7, "Jordan-Wielandt spectra and eigenpair residuals, 50 blocks", 10.0,
         criterion_jordan_wielandt},
        {8, "Red-black route reproduces Jacobi spectra, 100 instances", 30.0,
         criterion_red_black_route},
        {9, "CLI regenerates the golden CSV outputs byte-for-byte", 30.0,
         criterion_golden_files},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string detail;
        try {
            c.run();
        } catch (const Failure& f) {
            verdict = "FAIL";
            detail = f.message;
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = std::string("exception: ") + e.what();
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                             .count();
        if (verdict == "PASS" && elapsed > c.budget_seconds) {
            verdict = "FAIL";
            detail = "runtime " + std::to_string(elapsed) + " s exceeds budget " +
                     std::to_string(c.budget_seconds) + " s";
        }
        if (verdict == "FAIL") ++failures;
        std::printf("[%d/9] %s  %s (%.3f s)%s%s\n", c.id, verdict.c_str(), c.title.c_str(),
                    elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    }
    if (failures == 0)
        std::printf("all 9 acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
