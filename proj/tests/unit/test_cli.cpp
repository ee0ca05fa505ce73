#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = fs::temp_directory_path() / "hypfrac_cli_test";

int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" HYPFRAC_CLI_PATH "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

nlohmann::json manifest(const fs::path& p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("solve writes a field and a manifest") {
    fs::remove_all(kScratch);
    const auto dir = kScratch / "solve";
    CHECK(run("solve --beta 0.5 --f identity --t 1 --eta-grid 0.1:6:120 --out-dir " + dir.string()) == 0);
    CHECK(first_line(dir / "solve_field.csv") == "eta,u,t,beta,f_kind");
    const auto m = manifest(dir / "solve_manifest.json");
    CHECK(m["command"] == "solve");
    CHECK(std::abs(m["results"]["fields"][0]["mass"].get<double>() - 1.0) < 1e-3);
    CHECK(m.contains("wall_time_seconds"));
    CHECK(m["parameters"]["beta"] == "0.5");
}

TEST_CASE("exit codes") {
    const auto dir = (kScratch / "codes").string();
    CHECK(run("solve --beta 1.5 --out-dir " + dir) == 2);
    CHECK(run("solve --eta-grid 0.1:6 --out-dir " + dir) == 2);
    CHECK(run("solve --f cube --out-dir " + dir) == 2);
    CHECK(run("no-such-command") == 2);
    CHECK(run("solve --n-x 16 --out-dir " + dir) == 3);
    CHECK(run("acceptance --only 11 --out-dir " + dir) == 0);
}

TEST_CASE("config file and output directory from the environment") {
    const auto dir = kScratch / "env";
    fs::create_directories(kScratch);
    const auto cfg = kScratch / "run.ini";
    {
        std::ofstream out(cfg);
        out << "[nonlinear-residual]\nn = [2]\nbeta = [0.6]\nf = [identity]\nt = [1.0]\neta-grid = 1.5:3:4\n";
    }
    CHECK(run("--config " + cfg.string() + " nonlinear-residual", "HYPFRAC_OUT_DIR=" + dir.string()) == 0);
    CHECK(first_line(dir / "nonlinear-residual_residuals.csv") == "n,C,beta,f_kind,eta,t,residual");
    const auto m = manifest(dir / "nonlinear-residual_manifest.json");
    CHECK(m["results"]["rows"] == 4);
    CHECK(m["results"]["max_scaled_residual"].get<double>() < 1e-5);

    {
        std::ofstream out(cfg);
        out << "[solve]\nbeta = zero\n";
    }
    CHECK(run("--config " + cfg.string() + " solve --out-dir " + dir.string()) == 2);
}

TEST_CASE("simulate, ml-eval and geodesics") {
    const auto dir = kScratch / "misc";
    CHECK(run("simulate --process stable --beta 0.5 --n 1000 --seed 3 --out-dir " + dir.string()) == 0);
    CHECK(first_line(dir / "simulate_samples.csv") == "value,process,beta,lambda,f_kind,t,seed,stream");
    CHECK(run("ml-eval --beta 0.5 --z-grid -5:0:11 --out-dir " + dir.string()) == 0);
    CHECK(first_line(dir / "ml-eval_values.csv") == "beta,z,mittag_leffler,m_wright");
    CHECK(run("geodesics --p 0,1 --q 1,2 --out-dir " + dir.string()) == 0);
    std::ifstream in(dir / "geodesics_values.csv");
    std::string header;
    std::string row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(row.find("semicircle,2,") != std::string::npos);
    CHECK(run("geodesics --p 0,-1 --q 1,2 --out-dir " + dir.string()) == 2);
}

TEST_CASE("compare reports a KS test") {
    const auto dir = kScratch / "compare";
    CHECK(run("compare --beta 0.5 --t 1 --n 5000 --seed 7 --n-steps 1000 --out-dir " + dir.string()) == 0);
    const auto m = manifest(dir / "compare_manifest.json");
    CHECK(m["results"]["p_value"].get<double>() > 0.01);
    CHECK(first_line(dir / "compare_cdf.csv") == "eta,pde_cdf,empirical_cdf");
}
