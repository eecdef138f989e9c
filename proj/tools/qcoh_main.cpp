// qcoh: coherence sweeps, RG flows, scaling fits, monogamy scans, and the
// self-verification suite, emitting CSV / JSON for plotting.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qcoh/coherence.hpp"
#include "qcoh/errors.hpp"
#include "qcoh/rg_analysis.hpp"
#include "qcoh/spin_models.hpp"
#include "qcoh/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qcoh;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// Thrown by command bodies on semantically invalid flag values.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt_coupling(const Coupling& c) {
    if (c.is_frozen_infinite()) return "inf";
    if (c.is_frozen_zero()) return "0";
    return fmt6(c.value());
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) parts.push_back(item);
    return parts;
}

double parse_real(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError(what + ": '" + text + "' is not a number");
    }
}

int parse_int(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError(what + ": '" + text + "' is not an integer");
    }
}

// MIN:MAX:POINTS. A single point is allowed (MIN == MAX only then).
std::vector<double> parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("--param expects MIN:MAX:POINTS");
    const double lo = parse_real(parts[0], "--param MIN");
    const double hi = parse_real(parts[1], "--param MAX");
    const int points = parse_int(parts[2], "--param POINTS");
    if (points < 1) throw UsageError("--param: POINTS must be >= 1");
    if (points == 1) {
        if (lo > hi) throw UsageError("--param: MIN must be <= MAX");
        return {lo};
    }
    if (!(lo < hi)) throw UsageError("--param: MIN must be < MAX");
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = lo + (hi - lo) * i / static_cast<double>(points - 1);
    return grid;
}

// N or A:B (inclusive depth range).
std::pair<int, int> parse_steps(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) {
        const int n = parse_int(parts[0], "--steps");
        return {n, n};
    }
    if (parts.size() == 2) {
        const int a = parse_int(parts[0], "--steps A");
        const int b = parse_int(parts[1], "--steps B");
        if (a > b) throw UsageError("--steps: A must be <= B");
        return {a, b};
    }
    throw UsageError("--steps expects N or A:B");
}

Window parse_window(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw UsageError("--window expects LO:HI");
    Window w;
    w.lo = parse_real(parts[0], "--window LO");
    w.hi = parse_real(parts[1], "--window HI");
    if (!(w.lo < w.hi)) throw UsageError("--window: LO must be < HI");
    return w;
}

Model parse_model(const std::string& text) {
    if (text.empty()) throw UsageError("--model is required (itf or dm)");
    if (text == "itf") return Model::itf;
    if (text == "dm") return Model::dm;
    throw UsageError("--model must be itf or dm");
}

std::uint64_t parse_seed(const std::string& text) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError("--seed: '" + text + "' is not a non-negative integer");
    }
}

std::string strip(const std::string& text) {
    const auto a = text.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = text.find_last_not_of(" \t\r");
    return text.substr(a, b - a + 1);
}

// Stream to --out or stdout. I/O failures surface as exit code 3.
class Output {
public:
    explicit Output(const std::string& path) : path_(path) {
        if (!path_.empty()) {
            file_.open(path_);
            if (!file_) throw std::ios_base::failure("cannot open '" + path_ + "'");
        }
    }
    std::ostream& stream() { return path_.empty() ? std::cout : file_; }
    void finish() {
        stream().flush();
        if (!stream().good()) throw std::ios_base::failure("write to '" + path_ + "' failed");
    }

private:
    std::string path_;
    std::ofstream file_;
};

// Strength ratio to report on a row: flow_step at the coupling, or its
// exact limit on a frozen flag.
double row_strength_ratio(Model model, const Coupling& c) {
    if (c.is_finite()) return flow_step(model, c.value()).strength_ratio;
    if (model == Model::itf) return c.is_frozen_infinite() ? 0.0 : 1.0;
    return c.is_frozen_infinite() ? 0.25 : 1.0;
}

int cmd_sweep(Model model, const std::vector<double>& grid, std::pair<int, int> steps,
              const std::string& out_path) {
    Output out(out_path);
    out.stream() << "param,n_steps,effective_param,C_total,C_local,C_collective\n";
    for (int n = steps.first; n <= steps.second; ++n) {
        const auto records = sweep(model, grid, n);
        for (const SweepRecord& rec : records) {
            out.stream() << fmt6(rec.param) << ',' << rec.n_steps << ','
                         << fmt_coupling(rec.effective) << ',' << fmt6(rec.coherence.total)
                         << ',' << fmt6(rec.coherence.local) << ','
                         << fmt6(rec.coherence.collective) << '\n';
        }
    }
    out.finish();
    return kExitOk;
}

int cmd_flow(Model model, double start, int steps, const std::string& out_path) {
    const FlowTrajectory traj = iterate_flow(model, start, steps);
    Output out(out_path);
    out.stream() << "n,coupling,strength_ratio\n";
    for (std::size_t n = 0; n < traj.couplings.size(); ++n) {
        const Coupling& c = traj.couplings[n];
        out.stream() << n << ',' << fmt_coupling(c) << ','
                     << fmt6(row_strength_ratio(model, c)) << '\n';
        if (c.is_frozen()) break; // terminal row
    }
    out.finish();
    return kExitOk;
}

int cmd_scaling(Model model, std::pair<int, int> steps, Window window,
                const std::string& out_path, const std::string& summary_path) {
    if (steps.second - steps.first + 1 < 3)
        throw UsageError("scaling needs at least 3 depths (--steps A:B)");
    std::vector<int> depths;
    for (int n = steps.first; n <= steps.second; ++n) depths.push_back(n);

    const ScalingFit fit_c = scaling_fit(model, Observable::collective, depths, window);
    const ScalingFit fit_l = scaling_fit(model, Observable::local, depths, window);

    Output out(out_path);
    out.stream() << "n,lnN,ln_abs_dCc,ln_abs_dCl,x_star\n";
    const double ln_b = std::log(model == Model::itf ? 2.0 : 3.0);
    for (std::size_t i = 0; i < depths.size(); ++i) {
        const auto& [n_c, ext_c] = fit_c.located[i];
        const auto& [n_l, ext_l] = fit_l.located[i];
        const int n = n_c;
        auto ln_of = [](const std::optional<Extremum>& e) {
            return e && e->magnitude > 0.0 ? fmt6(std::log(e->magnitude))
                                           : std::string("nan");
        };
        out.stream() << n << ',' << fmt6((n + 1) * ln_b) << ',' << ln_of(ext_c) << ','
                     << ln_of(ext_l) << ','
                     << (ext_c ? fmt6(ext_c->location) : std::string("nan")) << '\n';
        (void)n_l;
    }
    out.finish();

    json summary;
    summary["theta_c"] = fit_c.theta;
    summary["theta_l"] = fit_l.theta;
    summary["nu_c"] = fit_c.nu();
    summary["nu_l"] = fit_l.nu();
    summary["r2_c"] = fit_c.r_squared;
    summary["r2_l"] = fit_l.r_squared;
    summary["depths"] = depths;
    summary["depths_used_c"] = fit_c.depths_used;
    summary["depths_used_l"] = fit_l.depths_used;
    Output sum_out(summary_path);
    sum_out.stream() << summary.dump(2) << '\n';
    sum_out.finish();
    return kExitOk;
}

int cmd_monogamy(const std::vector<double>& grid, int steps, const std::string& out_path) {
    Output out(out_path);
    out.stream() << "D,C_12,C_13,C_23,C_1_23,M\n";
    for (double d : grid) {
        const FlowTrajectory traj = iterate_flow(Model::dm, d, steps);
        const DensityMatrix rho = projector(dm_ground_state(traj.couplings.back()));
        const MonogamyReport report = monogamy(rho);
        const double c23 = cut_coherence(partial_trace(rho, {1, 2}), {{0}, {1}});
        out.stream() << fmt6(d) << ',' << fmt6(report.pairwise.at("1:2")) << ','
                     << fmt6(report.pairwise.at("1:3")) << ',' << fmt6(c23) << ','
                     << fmt6(report.headcut) << ',' << fmt6(report.m) << '\n';
    }
    out.finish();
    return kExitOk;
}

int cmd_verify(std::uint64_t seed, const std::string& out_path) {
    const VerifyReport report = run_verification(seed);
    json j;
    j["seed"] = report.seed;
    j["all_passed"] = report.all_passed;
    j["suites"] = json::array();
    for (const SuiteResult& s : report.suites) {
        json js;
        js["name"] = s.name;
        js["passed"] = s.passed;
        js["checks"] = s.checks;
        js["worst_residual"] = s.worst_residual;
        j["suites"].push_back(js);
    }
    Output out(out_path);
    out.stream() << j.dump(2) << '\n';
    out.finish();
    return report.all_passed ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum coherence under renormalization-group flow for two "
                 "Ising-type spin chains"};
    app.require_subcommand(1);

    std::string model_str, param_str, steps_str, window_str, start_str, seed_str;
    std::string out_path, summary_path, config_path;

    auto add_config = [&config_path](CLI::App* sub) {
        sub->add_option("--config", config_path, "Read key=value defaults from a file");
    };

    CLI::App* sc_sweep = app.add_subcommand("sweep", "Coherence triple over a coupling grid");
    sc_sweep->add_option("--model", model_str, "Model: itf or dm");
    sc_sweep->add_option("--param", param_str, "Coupling grid MIN:MAX:POINTS");
    sc_sweep->add_option("--steps", steps_str, "Depth N or range A:B");
    sc_sweep->add_option("--out", out_path, "CSV path (default stdout)");
    add_config(sc_sweep);

    CLI::App* sc_flow = app.add_subcommand("flow", "Iterate the renormalization map");
    sc_flow->add_option("--model", model_str, "Model: itf or dm");
    sc_flow->add_option("--start", start_str, "Bare coupling x0");
    sc_flow->add_option("--steps", steps_str, "Number of steps");
    sc_flow->add_option("--out", out_path, "CSV path (default stdout)");
    add_config(sc_flow);

    CLI::App* sc_scaling = app.add_subcommand("scaling", "Log-log fit of the derivative peak");
    sc_scaling->add_option("--model", model_str, "Model: itf or dm");
    sc_scaling->add_option("--steps", steps_str, "Depth range A:B");
    sc_scaling->add_option("--window", window_str, "Search window LO:HI");
    sc_scaling->add_option("--out", out_path, "CSV path (default stdout)");
    sc_scaling->add_option("--summary", summary_path, "JSON summary path (default stdout)");
    add_config(sc_scaling);

    CLI::App* sc_monogamy = app.add_subcommand("monogamy", "Pairwise cuts and monogamy score (DM model)");
    sc_monogamy->add_option("--param", param_str, "D grid MIN:MAX:POINTS");
    sc_monogamy->add_option("--steps", steps_str, "Depth N");
    sc_monogamy->add_option("--out", out_path, "CSV path (default stdout)");
    add_config(sc_monogamy);

    CLI::App* sc_verify = app.add_subcommand("verify", "Run the oracle and property suites");
    sc_verify->add_option("--seed", seed_str, "Sampler seed");
    sc_verify->add_option("--out", out_path, "JSON report path (default stdout)");
    add_config(sc_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    // key=value config: applied only where the command line stayed silent,
    // so precedence is flag > config > built-in default.
    const std::map<std::string, std::string*> config_keys = {
        {"model", &model_str},   {"param", &param_str}, {"steps", &steps_str},
        {"window", &window_str}, {"start", &start_str}, {"seed", &seed_str},
        {"out", &out_path},      {"summary", &summary_path}};

    auto apply_config = [&](CLI::App* sub) {
        if (config_path.empty()) return;
        std::ifstream in(config_path);
        if (!in) throw UsageError("--config: cannot read '" + config_path + "'");
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            const std::string entry = strip(line);
            if (entry.empty()) continue;
            const auto where = "--config line " + std::to_string(lineno);
            const auto eq = entry.find('=');
            if (eq == std::string::npos)
                throw UsageError(where + ": expected key=value, got '" + entry + "'");
            const std::string key = strip(entry.substr(0, eq));
            const std::string value = strip(entry.substr(eq + 1));
            const auto target = config_keys.find(key);
            if (target == config_keys.end() || !sub->get_option_no_throw("--" + key))
                throw UsageError(where + ": unknown key '" + key + "' for this command");
            if (sub->count("--" + key) > 0) continue;
            *target->second = value;
        }
    };

    auto steps_or = [&steps_str](const char* fallback) {
        return parse_steps(steps_str.empty() ? fallback : steps_str);
    };

    try {
        if (app.got_subcommand(sc_sweep)) {
            apply_config(sc_sweep);
            if (param_str.empty()) throw UsageError("--param is required");
            const auto steps = steps_or("0");
            if (steps.first < 0) throw UsageError("--steps must be >= 0");
            return cmd_sweep(parse_model(model_str), parse_grid(param_str), steps, out_path);
        }
        if (app.got_subcommand(sc_flow)) {
            apply_config(sc_flow);
            if (start_str.empty()) throw UsageError("--start is required");
            const auto steps = steps_or("10");
            if (steps.first != steps.second) throw UsageError("flow takes a single --steps N");
            return cmd_flow(parse_model(model_str), parse_real(start_str, "--start"),
                            steps.second, out_path);
        }
        if (app.got_subcommand(sc_scaling)) {
            apply_config(sc_scaling);
            return cmd_scaling(parse_model(model_str), steps_or("2:8"),
                               parse_window(window_str.empty() ? "0.8:1.2" : window_str),
                               out_path, summary_path);
        }
        if (app.got_subcommand(sc_monogamy)) {
            apply_config(sc_monogamy);
            const auto steps = steps_or("0");
            if (steps.first != steps.second) throw UsageError("monogamy takes a single --steps N");
            return cmd_monogamy(parse_grid(param_str.empty() ? "0.05:4:200" : param_str),
                                steps.second, out_path);
        }
        if (app.got_subcommand(sc_verify)) {
            apply_config(sc_verify);
            return cmd_verify(parse_seed(seed_str.empty() ? "12345" : seed_str), out_path);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const InvalidParamError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerifyFailed;
    }
    return kExitOk;
}
