#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "moranlab_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = std::string(MORANLAB_CLI_PATH) + " " + args;
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    std::string line;
    std::getline(f, line);  // header
    std::vector<std::vector<double>> rows;
    while (std::getline(f, line)) {
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TEST_CASE("fixation output: correct shape, exact endpoints, stochastic content") {
    const auto out = work_dir() / "fix.csv";
    REQUIRE(run("fixation -N 30 --payoffs 2 1 3 1 --rule db -o " + out.string()) == 0);
    const auto rows = read_csv(out);
    REQUIRE(rows.size() == 31);
    CHECK(rows.front()[1] == 0.0);
    CHECK(rows.back()[1] == 1.0);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][1] >= rows[i - 1][1]);
    const auto summary = nlohmann::json::parse(slurp(out.string() + ".summary.json"));
    CHECK(summary["checks"]["monotone"].get<bool>());
    CHECK(summary["rule"].get<std::string>() == "death-birth");
}

TEST_CASE("reruns are byte-identical") {
    const auto a = work_dir() / "rerun_a.csv";
    const auto b = work_dir() / "rerun_b.csv";
    const std::string opts =
        "pde --alpha -1 --beta 2 --grid 64 --t-end 0.25 --ic '6x(1-x)' -o ";
    REQUIRE(run(opts + a.string()) == 0);
    REQUIRE(run(opts + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a.string() + ".summary.json") == slurp(b.string() + ".summary.json"));
}

TEST_CASE("relative outputs land in the directory from the environment") {
    const auto dir = work_dir() / "redirected";
    fs::create_directories(dir);
    const std::string cmd = "MORANLAB_OUTDIR=" + dir.string() +
                            " " MORANLAB_CLI_PATH
                            " ode --alpha 1 --beta 2 --x0 0.3 --t-end 5 -o path.csv";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(fs::exists(dir / "path.csv"));
    CHECK(fs::exists(dir / "path.csv.summary.json"));
}

TEST_CASE("evolved distributions conserve mass") {
    const auto out = work_dir() / "ev.csv";
    REQUIRE(run("evolve -N 40 --payoffs 2 1 3 1 --steps 2000 --init delta:20 -o " +
                out.string()) == 0);
    const auto rows = read_csv(out);
    REQUIRE(rows.size() == 41);
    double mass = 0.0;
    for (const auto& r : rows) mass += r[1];
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    const auto summary = nlohmann::json::parse(slurp(out.string() + ".summary.json"));
    CHECK(summary["checks"]["conserved_inner_drift"].get<double>() < 1e-12);
}

TEST_CASE("strategy comparison prints a machine-readable verdict") {
    const auto out = work_dir() / "dom.json";
    REQUIRE(run("dominance --alpha -1 --beta 2 --q1 0.2 --q2 0.4 -o " + out.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["numeric"]["outcome"].get<std::string>() == "second");
    CHECK(j["regions"]["outcome"].get<std::string>() == "second");
    CHECK(j["pivot"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("spectral output is the eigenvalue ladder") {
    const auto out = work_dir() / "spec.csv";
    const auto modes = work_dir() / "modes.csv";
    REQUIRE(run("spectral --alpha 0 --beta 0 --grid 128 --modes 3 -o " + out.string() +
                " --modes-out " + modes.string()) == 0);
    const auto rows = read_csv(out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][1] == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(rows[1][1] == doctest::Approx(6.0).epsilon(1e-7));
    const auto mrows = read_csv(modes);
    REQUIRE(mrows.size() == 127);
    REQUIRE(mrows[0].size() == 4);
}

TEST_CASE("bad inputs exit nonzero with a diagnostic") {
    // Library-level validation: the closed form needs frequency-independent payoffs.
    CHECK(run("fixation -N 10 --payoffs 2 1 3 1 --method closed -o " +
              (work_dir() / "never.csv").string() + " 2>/dev/null") == 2);
    // Parser-level validation: grid outside its allowed range.
    CHECK(run("pde --grid 2 -o " + (work_dir() / "never2.csv").string() + " 2>/dev/null") != 0);
    // delta placement outside the population.
    CHECK(run("evolve -N 10 --init delta:11 -o " + (work_dir() / "never3.csv").string() +
              " 2>/dev/null") == 2);
}

TEST_CASE("serial flag leaves results bitwise unchanged") {
    const auto a = work_dir() / "auto.csv";
    const auto b = work_dir() / "serial.csv";
    const std::string opts = "pde --alpha 2 --beta -1 --grid 5000 --t-end 0.002 --ic uniform -o ";
    REQUIRE(run(opts + a.string()) == 0);
    REQUIRE(run("--serial " + opts + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
}
