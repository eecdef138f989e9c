#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

#include "json.hpp"

namespace {

const std::string kCli = QCOH_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = "'" + kCli + "' " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream is(line);
    std::string field;
    while (std::getline(is, field, ',')) fields.push_back(field);
    return fields;
}

struct TempFile {
    explicit TempFile(std::string name) : path(std::move(name)) {}
    ~TempFile() { std::remove(path.c_str()); }
    std::string path;
};

} // namespace

TEST_CASE("sweep: header, row count, ordering") {
    TempFile csv("cli_sweep.csv");
    CHECK(run("sweep --model itf --param 0.5:1.5:5 --steps 2 --out " + csv.path) == 0);
    const auto lines = lines_of(slurp(csv.path));
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "param,n_steps,effective_param,C_total,C_local,C_collective");
    CHECK(fields_of(lines[1])[0] == "0.5");
    CHECK(fields_of(lines[5])[0] == "1.5");
    CHECK(fields_of(lines[1])[1] == "2");

    // A depth range iterates depth-outer: all rows of one depth, then the next.
    TempFile ranged("cli_sweep_range.csv");
    CHECK(run("sweep --model dm --param 0.9:1.1:3 --steps 1:3 --out " + ranged.path) == 0);
    const auto rlines = lines_of(slurp(ranged.path));
    REQUIRE(rlines.size() == 10);
    for (int row = 1; row <= 3; ++row) CHECK(fields_of(rlines[row])[1] == "1");
    for (int row = 4; row <= 6; ++row) CHECK(fields_of(rlines[row])[1] == "2");
    for (int row = 7; row <= 9; ++row) CHECK(fields_of(rlines[row])[1] == "3");
}

TEST_CASE("sweep: frozen effective couplings print as tokens") {
    TempFile csv("cli_sweep_frozen.csv");
    CHECK(run("sweep --model itf --param 2.5:3.5:2 --steps 9 --out " + csv.path) == 0);
    const auto lines = lines_of(slurp(csv.path));
    REQUIRE(lines.size() == 3);
    CHECK(fields_of(lines[1])[2] == "inf");
    CHECK(fields_of(lines[2])[2] == "inf");

    TempFile low("cli_sweep_frozen0.csv");
    CHECK(run("sweep --model itf --param 0.2:0.3:2 --steps 9 --out " + low.path) == 0);
    CHECK(fields_of(lines_of(slurp(low.path))[1])[2] == "0");
}

TEST_CASE("sweep output is deterministic") {
    TempFile a("cli_det_a.csv"), b("cli_det_b.csv");
    const std::string args = "sweep --model dm --param 0.5:2:7 --steps 0:3 --out ";
    CHECK(run(args + a.path) == 0);
    CHECK(run(args + b.path) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("flow: trajectory rows stop at the first frozen coupling") {
    TempFile csv("cli_flow.csv");
    CHECK(run("flow --model itf --start 0.5 --steps 8 --out " + csv.path) == 0);
    const auto lines = lines_of(slurp(csv.path));
    REQUIRE(lines.size() == 7); // header + n = 0..5; coupling freezes at n = 5
    CHECK(lines[0] == "n,coupling,strength_ratio");
    CHECK(fields_of(lines[1])[0] == "0");
    CHECK(fields_of(lines[1])[1] == "0.5");
    CHECK(fields_of(lines[2])[1] == "0.25");
    const auto last = fields_of(lines[6]);
    CHECK(last[0] == "5");
    CHECK(last[1] == "0");
    CHECK(last[2] == "1"); // limit strength ratio below threshold

    TempFile up("cli_flow_up.csv");
    CHECK(run("flow --model dm --start 1.5 --steps 34 --out " + up.path) == 0);
    const auto ulines = lines_of(slurp(up.path));
    const auto ulast = fields_of(ulines.back());
    CHECK(ulast[1] == "inf");
    CHECK(ulast[2] == "0.25");
}

TEST_CASE("flow: fixed point never freezes") {
    TempFile csv("cli_flow_fp.csv");
    CHECK(run("flow --model dm --start 1 --steps 6 --out " + csv.path) == 0);
    const auto lines = lines_of(slurp(csv.path));
    REQUIRE(lines.size() == 8);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        CHECK(fields_of(lines[k])[1] == "1");
        CHECK(fields_of(lines[k])[2] == "0.444444");
    }
}

TEST_CASE("scaling: CSV rows per depth plus JSON summary") {
    TempFile csv("cli_scaling.csv"), js("cli_scaling.json");
    CHECK(run("scaling --model itf --steps 2:6 --window 0.8:1.2 --out " + csv.path +
              " --summary " + js.path) == 0);
    const auto lines = lines_of(slurp(csv.path));
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "n,lnN,ln_abs_dCc,ln_abs_dCl,x_star");
    CHECK(fields_of(lines[1])[0] == "2");
    CHECK(fields_of(lines[5])[0] == "6");

    const auto summary = nlohmann::json::parse(slurp(js.path));
    for (const char* key :
         {"theta_c", "theta_l", "nu_c", "nu_l", "r2_c", "r2_l", "depths"})
        CHECK(summary.contains(key));
    CHECK(summary["theta_c"].get<double>() > 0.9);
    CHECK(summary["theta_c"].get<double>() < 1.1);
    CHECK(summary["r2_c"].get<double>() > 0.999);
    CHECK(summary["depths"].size() == 5);

    // DM: shallow depths are dropped from the fit but still appear as rows.
    TempFile dcsv("cli_scaling_dm.csv"), djs("cli_scaling_dm.json");
    CHECK(run("scaling --model dm --steps 2:6 --out " + dcsv.path + " --summary " +
              djs.path) == 0);
    const auto dsummary = nlohmann::json::parse(slurp(djs.path));
    CHECK(dsummary["theta_c"].get<double>() > 0.40);
    CHECK(dsummary["theta_c"].get<double>() < 0.50);
    CHECK(dsummary["depths_used_c"].size() < dsummary["depths"].size());
    const auto dlines = lines_of(slurp(dcsv.path));
    REQUIRE(dlines.size() == 6);
}

TEST_CASE("monogamy: header and positivity") {
    TempFile csv("cli_monogamy.csv");
    CHECK(run("monogamy --param 0.5:1.5:3 --steps 0 --out " + csv.path) == 0);
    const auto lines = lines_of(slurp(csv.path));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "D,C_12,C_13,C_23,C_1_23,M");
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto f = fields_of(lines[k]);
        REQUIRE(f.size() == 6);
        CHECK(std::stod(f[5]) > 0.0);
        // symmetric outer sites: C_12 == C_23
        CHECK(std::stod(f[1]) == doctest::Approx(std::stod(f[3])).epsilon(1e-9));
    }
}

TEST_CASE("verify: deterministic report, exit 0") {
    TempFile a("cli_verify_a.json"), b("cli_verify_b.json");
    CHECK(run("verify --seed 42 --out " + a.path) == 0);
    CHECK(run("verify --seed 42 --out " + b.path) == 0);
    CHECK(slurp(a.path) == slurp(b.path));

    const auto report = nlohmann::json::parse(slurp(a.path));
    CHECK(report["seed"].get<std::uint64_t>() == 42);
    CHECK(report["all_passed"].get<bool>());
    CHECK(report["suites"].size() == 6);
    for (const auto& suite : report["suites"]) CHECK(suite["passed"].get<bool>());
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("sweep --model itf") == 2);                          // missing --param
    CHECK(run("sweep --model bogus --param 0.5:1.5:3") == 2);      // bad model
    CHECK(run("sweep --model itf --param 1.5:0.5:3") == 2);        // MIN > MAX
    CHECK(run("sweep --model itf --param 0.5:1.5:0") == 2);        // no points
    CHECK(run("sweep --model itf --param 0.5:1.5:3 --steps 3:2") == 2);
    CHECK(run("sweep --model itf --param 0.5:1.5:3 --steps -1") == 2);
    CHECK(run("flow --model itf --start 0.5 --steps 2:3") == 2);   // range not allowed
    CHECK(run("flow --model itf --start -2 --steps 3") == 2);      // negative coupling
    CHECK(run("scaling --model itf --steps 4:5") == 2);            // fewer than 3 depths
    CHECK(run("scaling --model itf --steps 2:6 --window 1.2:0.8") == 2);
    CHECK(run("monogamy --param 0.5:1.5:3 --steps 0:2") == 2);     // range not allowed
    CHECK(run("nonsense") == 2);
    CHECK(run("") == 2);
}

TEST_CASE("unwritable output path exits with code 3") {
    // A regular file used as a directory component cannot be traversed.
    TempFile blocker("cli_blocker");
    std::ofstream(blocker.path) << "x";
    CHECK(run("sweep --model itf --param 0.5:1.5:3 --steps 0 --out " + blocker.path +
              "/out.csv") == 3);
}

TEST_CASE("config file supplies defaults, flags override") {
    TempFile cfg("cli_cfg.ini"), out_a("cli_cfg_a.csv"), out_b("cli_cfg_b.csv");
    std::ofstream(cfg.path) << "model=itf\nparam=0.5:1.5:3\nsteps=1\n";

    CHECK(run("sweep --config " + cfg.path + " --out " + out_a.path) == 0);
    const auto alines = lines_of(slurp(out_a.path));
    REQUIRE(alines.size() == 4);
    CHECK(fields_of(alines[1])[1] == "1");

    // The command line wins over the file.
    CHECK(run("sweep --config " + cfg.path + " --steps 2 --out " + out_b.path) == 0);
    const auto blines = lines_of(slurp(out_b.path));
    REQUIRE(blines.size() == 4);
    CHECK(fields_of(blines[1])[1] == "2");
}

TEST_CASE("config file errors exit with code 2") {
    CHECK(run("sweep --config does_not_exist.ini") == 2);

    TempFile junk("cli_cfg_junk.ini");
    std::ofstream(junk.path) << "model=itf\nparam=0.5:1.5:3\nwibble=1\n";
    CHECK(run("sweep --config " + junk.path) == 2); // unknown key

    TempFile wrong("cli_cfg_wrong.ini");
    std::ofstream(wrong.path) << "window=0.8:1.2\n"; // not a sweep option
    CHECK(run("sweep --param 0.5:1.5:3 --model itf --config " + wrong.path) == 2);

    TempFile noeq("cli_cfg_noeq.ini");
    std::ofstream(noeq.path) << "model itf\n";
    CHECK(run("sweep --config " + noeq.path) == 2);

    // Comments and blank lines are fine.
    TempFile commented("cli_cfg_comment.ini"), out("cli_cfg_comment.csv");
    std::ofstream(commented.path)
        << "# defaults\n\nmodel=itf # inline note\nparam=0.5:1.5:3\n";
    CHECK(run("sweep --config " + commented.path + " --out " + out.path) == 0);
    CHECK(lines_of(slurp(out.path)).size() == 4);
}
