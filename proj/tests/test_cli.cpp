#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ritzsym/quadrature.hpp"
#include "ritzsym/cases.hpp"

using namespace ritzsym;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("RITZSYM_CLI");
    return p ? p : "";
}

struct CommandResult {
    int exit_code;
    std::string stdout_text;
};

CommandResult run_cli(const std::string& args) {
    auto dir = fs::temp_directory_path() / "ritzsym_cli_tests";
    fs::create_directories(dir);
    auto out = dir / "stdout.txt";
    std::string cmd = "\"" + cli_path() + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return {code, text};
}

fs::path scratch() {
    auto dir = fs::temp_directory_path() / "ritzsym_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("estimate of case 1 with f = x at m = 1 is the Rayleigh value 0.51", "[cli]") {
    if (cli_path().empty()) SKIP("RITZSYM_CLI not set");
    auto r = run_cli("estimate --matrix case:1 --vector case --f poly:0,1 --m 1");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.stdout_text);
    CHECK(std::fabs(j["result"]["value"].get<double>() - 0.51) <= 1e-12);
    CHECK(j["result"]["norm_u_squared"].get<double>() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("estimate at full Krylov depth matches the dense oracle", "[cli]") {
    if (cli_path().empty()) SKIP("RITZSYM_CLI not set");
    auto r = run_cli("estimate --matrix case:1 --vector case --f exp --m 50");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.stdout_text);
    auto cd = build_case(CaseSpec::of(1));
    double oracle = quadratic_form_oracle(cd.A, cd.v, MatrixFunction::exp());
    CHECK(std::fabs(j["result"]["value"].get<double>() - oracle) <= 1e-8 * std::fabs(oracle));
}

TEST_CASE("identical invocations produce byte-identical output", "[cli]") {
    if (cli_path().empty()) SKIP("RITZSYM_CLI not set");
    auto a = run_cli("estimate --matrix case:2 --vector case --f exp --m 10");
    auto b = run_cli("estimate --matrix case:2 --vector case --f exp --m 10");
    REQUIRE(a.exit_code == 0);
    CHECK(a.stdout_text == b.stdout_text);

    auto dir = scratch();
    auto out1 = dir / "bounds1.csv";
    auto out2 = dir / "bounds2.csv";
    REQUIRE(run_cli("bounds --kappa-grid paper --out \"" + out1.string() + "\"").exit_code == 0);
    REQUIRE(run_cli("bounds --kappa-grid paper --out \"" + out2.string() + "\"").exit_code == 0);
    CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("usage problems exit with code 2", "[cli]") {
    if (cli_path().empty()) SKIP("RITZSYM_CLI not set");
    CHECK(run_cli("estimate --matrix case:1 --f exp").exit_code == 2);      // missing --m
    CHECK(run_cli("estimate --no-such-flag").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("estimate --matrix case:1 --vector case --f exp --m 99").exit_code == 2);
    CHECK(run_cli("estimate --matrix case:9 --vector case --f exp --m 3").exit_code == 2);
    CHECK(run_cli("bounds --kappa-grid paper --epsilon 1e-6").exit_code == 2);  // epsilon sans f
    CHECK(run_cli("symmetry --m 10").exit_code == 2);  // neither case nor matrix
}

TEST_CASE("numeric domain violations exit with code 3", "[cli]") {
    if (cli_path().empty()) SKIP("RITZSYM_CLI not set");
    auto dir = scratch();
    auto mtx = dir / "indefinite.mtx";
    std::ofstream(mtx) << "%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n2 1 1.0\n";
    auto vec = dir / "start.txt";
    std::ofstream(vec) << "2.0\n1.0\n";
    // Ritz nodes of [[0,1],[1,0]] are -1 and 1: log is undefined at -1.
    auto r = run_cli("estimate --matrix \"" + mtx.string() + "\" --vector \"" + vec.string() +
                     "\" --f log --m 2");
    CHECK(r.exit_code == 3);
}

TEST_CASE("singular M_rho rows carry error markers; --rho rescues them", "[cli]") {
    if (cli_path().empty()) SKIP("RITZSYM_CLI not set");
    // canonical rho puts the image ellipse's left vertex at zero, so inv is
    // singular on the boundary
    auto bad = run_cli("bounds --kappa-grid 9 --f inv --epsilon 1e-6");
    REQUIRE(bad.exit_code == 0);
    CHECK(bad.stdout_text.find("nonpositive axis") != std::string::npos);

    auto good = run_cli("bounds --kappa-grid 9 --f inv --epsilon 1e-6 --rho 1.5 --format json");
    REQUIRE(good.exit_code == 0);
    auto j = nlohmann::json::parse(good.stdout_text);
    CHECK(j[0]["rho"].get<double>() == 1.5);
    CHECK(j[0]["m_rho"].get<double>() > 0.0);
}

TEST_CASE("missing input files exit with code 4", "[cli]") {
    if (cli_path().empty()) SKIP("RITZSYM_CLI not set");
    CHECK(run_cli("estimate --matrix /no/such/file.mtx --vector ones --f exp --m 2").exit_code ==
          4);
}

TEST_CASE("symmetry subcommand writes the three case-1 outputs", "[cli]") {
    if (cli_path().empty()) SKIP("RITZSYM_CLI not set");
    auto dir = scratch() / "sym1";
    fs::remove_all(dir);
    auto r = run_cli("symmetry --case 1 --m 10 --out-dir \"" + dir.string() + "\"");
    REQUIRE(r.exit_code == 0);
    auto rep = nlohmann::json::parse(slurp(dir / "case1_report.json"));
    CHECK(rep["symmetry"]["spectrum_symmetric"] == true);
    CHECK(rep["symmetry"]["mu_palindrome"] == true);
    CHECK(rep["symmetry"]["ritz_symmetric"] == true);
    CHECK(std::fabs(rep["symmetry"]["spectrum_center"].get<double>() - 0.51) <= 1e-10);
    CHECK(fs::exists(dir / "case1_measure.csv"));
    CHECK(fs::exists(dir / "case1_nodes.csv"));

    std::stringstream nodes(slurp(dir / "case1_nodes.csv"));
    std::string line;
    std::getline(nodes, line);
    CHECK(line == "index,node,weight");
    int count = 0;
    while (std::getline(nodes, line))
        if (!line.empty()) ++count;
    CHECK(count == 10);
}

TEST_CASE("symmetry subcommand flags case 3 as asymmetric", "[cli]") {
    if (cli_path().empty()) SKIP("RITZSYM_CLI not set");
    auto dir = scratch() / "sym3";
    fs::remove_all(dir);
    auto r = run_cli("symmetry --case 3 --m 10 --out-dir \"" + dir.string() + "\"");
    REQUIRE(r.exit_code == 0);
    auto rep = nlohmann::json::parse(slurp(dir / "case3_report.json"));
    CHECK(rep["symmetry"]["spectrum_symmetric"] == true);
    CHECK(rep["symmetry"]["mu_palindrome"] == false);
    CHECK(rep["symmetry"]["ritz_symmetric"] == false);
}

TEST_CASE("bounds subcommand reports the paper grid with row-level errors", "[cli]") {
    if (cli_path().empty()) SKIP("RITZSYM_CLI not set");
    auto r = run_cli("bounds --kappa-grid 0.5,100000");
    REQUIRE(r.exit_code == 0);
    std::stringstream ss(r.stdout_text);
    std::string header, bad_row, good_row;
    std::getline(ss, header);
    std::getline(ss, bad_row);
    std::getline(ss, good_row);
    CHECK(header == "kappa,m_star_lower,m_star_upper,m_star_average,m_star_exact,error");
    CHECK(bad_row.find("kappa") != std::string::npos);  // error message mentions the parameter
    CHECK(bad_row.find(",,,,") != std::string::npos);

    // kappa = 1e5 row: exact m* lies in the paper's "around 55" window
    auto cols = [&] {
        std::vector<std::string> out;
        std::stringstream rowss(good_row);
        std::string tok;
        while (std::getline(rowss, tok, ',')) out.push_back(tok);
        return out;
    }();
    REQUIRE(cols.size() >= 5);
    double exact = std::stod(cols[4]);
    CHECK(exact >= 54.0);
    CHECK(exact <= 56.0);
}

TEST_CASE("case 4 routes through a local matrix file", "[cli]") {
    if (cli_path().empty()) SKIP("RITZSYM_CLI not set");
    auto dir = scratch();
    auto mtx = dir / "case4_tiny.mtx";
    std::ofstream(mtx) << "%%MatrixMarket matrix coordinate real symmetric\n"
                          "4 4 5\n1 1 1.0\n2 2 2.0\n3 3 3.0\n4 4 4.0\n2 1 0.5\n";
    auto r = run_cli("estimate --matrix case:4 --case4-matrix \"" + mtx.string() +
                     "\" --vector case --f exp --m 4");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.stdout_text);
    CHECK(j["result"]["norm_u_squared"].get<double>() == Catch::Approx(1.0).margin(1e-12));
    // without the file path, case:4 is an argument error
    CHECK(run_cli("estimate --matrix case:4 --vector case --f exp --m 4").exit_code == 2);
}

TEST_CASE("dense cap gating controls the symmetry condition fields", "[cli]") {
    if (cli_path().empty()) SKIP("RITZSYM_CLI not set");
    auto dir = scratch() / "capgate";
    fs::remove_all(dir);

    setenv("RITZSYM_DENSE_CAP", "10", 1);
    auto r = run_cli("symmetry --case 1 --m 5 --out-dir \"" + dir.string() + "\"");
    REQUIRE(r.exit_code == 0);
    auto rep = nlohmann::json::parse(slurp(dir / "case1_report.json"));
    CHECK(rep["inputs"]["dense_condition_available"] == false);
    CHECK(rep["symmetry"]["condition_evaluated"] == false);
    CHECK_FALSE(fs::exists(dir / "case1_measure.csv"));
    CHECK(fs::exists(dir / "case1_nodes.csv"));

    fs::remove_all(dir);
    r = run_cli("symmetry --case 1 --m 5 --allow-dense-cap-override --out-dir \"" +
                dir.string() + "\"");
    REQUIRE(r.exit_code == 0);
    rep = nlohmann::json::parse(slurp(dir / "case1_report.json"));
    CHECK(rep["symmetry"]["condition_evaluated"] == true);
    CHECK(fs::exists(dir / "case1_measure.csv"));
    unsetenv("RITZSYM_DENSE_CAP");
}

TEST_CASE("bounds subcommand computes floors when f and epsilon are given", "[cli]") {
    if (cli_path().empty()) SKIP("RITZSYM_CLI not set");
    auto r = run_cli("bounds --kappa-grid 9 --f exp --epsilon 1e-6 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.stdout_text);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["rho"].get<double>() == 2.0);
    CHECK(j[0]["m_asym_floor"].get<long long>() >= j[0]["m_sym_floor"].get<long long>());
}
