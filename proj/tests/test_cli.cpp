#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

// drives the installed binary end to end; the test runner sets ENTWIT_BIN

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("entwit_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    const char* bin = std::getenv("ENTWIT_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "ENTWIT_BIN must point at the CLI binary");
    static int counter = 0;
    const fs::path so = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
    const fs::path se = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd =
        "\"" + std::string(bin) + "\" " + args + " > " + so.string() + " 2> " + se.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(so);
    r.err = slurp(se);
    return r;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

}  // namespace

TEST_CASE("sweep writes the exact CSV contract") {
    const fs::path out = scratch_dir() / "sweep.csv";
    const auto r = run("sweep --model xxx --sites 4 --j 1 --boundary periodic "
                       "--t-axis 0.5:2:4 --b-axis 0:3:3 --out " +
                       out.string());
    REQUIRE(r.code == 0);
    const auto lines = split_lines(slurp(out));
    REQUIRE(lines.size() == 1 + 4 * 3);
    CHECK(lines[0] == "T,B,U,M,chi,energy_margin,chi_margin,energy_verdict,chi_verdict");
    // rows are B-major: four T rows per field value
    const std::vector<double> want_b{0.0, 0.0, 0.0, 0.0, 1.5, 1.5, 1.5, 1.5, 3.0, 3.0, 3.0, 3.0};
    const std::vector<double> want_t{0.5, 1.0, 1.5, 2.0};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_csv(lines[i]);
        REQUIRE(cells.size() == 9);
        CHECK(std::stod(cells[0]) == doctest::Approx(want_t[(i - 1) % 4]));
        CHECK(std::stod(cells[1]) == doctest::Approx(want_b[i - 1]));
        CHECK((cells[7] == "entangled" || cells[7] == "unknown"));
        CHECK((cells[8] == "entangled" || cells[8] == "unknown"));
    }
}

TEST_CASE("a 1x1 sweep agrees with the witness subcommand") {
    const auto sweep_r = run("sweep --model xxx --sites 4 --j 1 --t-axis 1:1:1 --b-axis 0.5:0.5:1");
    REQUIRE(sweep_r.code == 0);
    const auto lines = split_lines(sweep_r.out);
    REQUIRE(lines.size() == 2);
    const auto cells = split_csv(lines[1]);

    const auto wit_r = run("witness --model xxx --sites 4 --j 1 --temp 1 --field 0.5");
    REQUIRE(wit_r.code == 0);
    const json j = json::parse(wit_r.out);
    CHECK(std::stod(cells[2]) == doctest::Approx(j["thermo"]["u"].get<double>()).epsilon(1e-12));
    CHECK(std::stod(cells[3]) == doctest::Approx(j["thermo"]["m"].get<double>()).epsilon(1e-12));
    CHECK(std::stod(cells[5]) ==
          doctest::Approx(j["energy_witness"]["margin"].get<double>()).epsilon(1e-12));
    CHECK(std::stod(cells[6]) ==
          doctest::Approx(j["susceptibility_witness"]["margin"].get<double>()).epsilon(1e-12));
}

TEST_CASE("invalid grids exit 2 and leave no file behind") {
    const fs::path out = scratch_dir() / "never.csv";
    const auto r = run("sweep --model xxx --sites 4 --t-axis -1:2:4 --b-axis 0:1:2 --out " +
                       out.string());
    CHECK(r.code == 2);
    CHECK_FALSE(fs::exists(out));
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("witness emits the documented JSON document") {
    const auto r = run("witness --model alternating --sites 4 --j1 1 --j2 0.25 --temp 0.8");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.contains("model"));
    CHECK(j.contains("thermo"));
    CHECK(j["energy_witness"].contains("margin"));
    CHECK(j["susceptibility_witness"].contains("bound"));
    CHECK(j.contains("gap_transition_estimate"));
    CHECK(j["model"]["num_sites"] == 4);
}

TEST_CASE("bose reports no condensation in two dimensions") {
    const auto r = run("bose --dim 2 --particles 50 --regions 5 --volume 1 --mass 1");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["transition_report"]["t_bec"].get<double>() == 0.0);
    CHECK(j["transition_report"]["ratio_infinite"].get<bool>());
    CHECK(j["transition_report"]["t_trans"].get<double>() > 0.0);
    CHECK(j["condensate_fraction_probe"]["d1"]["divergence_class"] == "power");
    CHECK(j["condensate_fraction_probe"]["d2"]["divergence_class"] == "logarithmic");
    CHECK(j["condensate_fraction_probe"]["d3"]["divergence_class"] == "convergent");
}

TEST_CASE("certify saturates the 2-site ring bound") {
    const auto r = run("certify --model xxx --sites 2 --boundary periodic --restarts 100 --seed 7");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["report"]["bound"].get<double>() == doctest::Approx(2.0));
    CHECK(j["report"]["gap"].get<double>() <= 1e-8);
    CHECK(j["report"]["gap"].get<double>() >= -1e-9);
}

TEST_CASE("corr emits a CSV series and a classification") {
    const fs::path out = scratch_dir() / "corr.csv";
    const auto r = run("corr --model xxx --sites 8 --j 1 --boundary periodic --temp 8 "
                       "--connected --r-max 5 --out " +
                       out.string());
    REQUIRE(r.code == 0);
    const auto lines = split_lines(slurp(out));
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "r,C");
    const json j = json::parse(r.out);
    CHECK(j.contains("classification"));

    const auto rj = run("corr --model xxx --sites 8 --j 1 --boundary periodic --temp 8 "
                        "--connected --r-max 5 --format json");
    REQUIRE(rj.code == 0);
    const json full = json::parse(rj.out);
    CHECK(full["series"]["separations"].size() == 5);
    CHECK(full["classification"].contains("decay_class"));
}

TEST_CASE("unknown subcommands exit 2 with usage text") {
    const auto r = run("frobnicate");
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("physical-unit runs rescale to the natural-unit run exactly") {
    // a quoted exchange constant of 4 meV is a Pauli coupling of 1; the
    // 0.3 meV Zeeman energy passes through unchanged
    const auto nat = run("witness --model xxx --sites 2 --j 1 --field 0.3 --temp 1");
    REQUIRE(nat.code == 0);
    char temp_k[40];
    std::snprintf(temp_k, sizeof temp_k, "%.17g", 1.0 / 8.617333e-2);
    const auto phys = run(std::string("witness --model xxx --sites 2 --j 4 --field 0.3 --temp ") +
                          temp_k + " --units physical");
    REQUIRE(phys.code == 0);
    const json a = json::parse(nat.out), b = json::parse(phys.out);
    for (const char* key : {"u", "m", "chi", "c"})
        CHECK(a["thermo"][key].get<double>() ==
              doctest::Approx(b["thermo"][key].get<double>()).epsilon(1e-10));
    CHECK(a["energy_witness"]["margin"].get<double>() ==
          doctest::Approx(b["energy_witness"]["margin"].get<double>()).epsilon(1e-10));
    CHECK(b["thermo"]["temperature"].get<double>() ==
          doctest::Approx(1.0 / 8.617333e-2).epsilon(1e-10));
}
