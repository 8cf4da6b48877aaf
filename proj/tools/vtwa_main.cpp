// Command-line front end: verify, evolve, distance and sweep.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vtwa/experiments.hpp"
#include "vtwa/parallel.hpp"

namespace fs = std::filesystem;
using namespace vtwa;

namespace {

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    unsigned threads = 0;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config_path, "key = value configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "seed for sampling (ensemble.seed, or verify.seed for verify)");
    cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--threads", o.threads, "worker threads (default: VTWA_THREADS or hardware)");
    cmd->add_option("--set", o.overrides, "override one key, e.g. --set model.g=0.5");
}

Config load_config(const CommonOptions& o, bool verify) {
    Config c;
    if (!o.config_path.empty()) c.load(o.config_path);
    if (o.seed) c.set(verify ? "verify.seed" : "ensemble.seed", std::to_string(*o.seed));
    for (const auto& kv : o.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        c.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return c;
}

unsigned thread_count(const CommonOptions& o) { return o.threads > 0 ? o.threads : default_thread_count(); }

fs::path prepare_out(const CommonOptions& o) {
    fs::path dir(o.out_dir);
    fs::create_directories(dir);
    return dir;
}

void print_gates(const std::vector<Gate>& gates) {
    for (const auto& g : gates)
        std::printf("  %-32s %-24s %s %s\n", g.name.c_str(), format_number(g.value).c_str(),
                    g.requirement.c_str(), g.passed ? "pass" : "FAIL");
}

int cmd_verify(const CommonOptions& o, bool fault) {
    const Config c = load_config(o, true);
    const auto dir = prepare_out(o);
    const auto report = run_verify(c, fault);

    std::ofstream table(dir / "verify.csv");
    table << "tuple,check,g,x0,p0,sigma_x,sigma_p,residual,tolerance,passed\n";
    for (const auto& r : report.checks)
        table << r.tuple << ',' << r.name << ',' << format_number(r.g) << ',' << format_number(r.x0)
              << ',' << format_number(r.p0) << ',' << format_number(r.sigma_x) << ','
              << format_number(r.sigma_p) << ',' << format_number(r.residual) << ','
              << format_number(r.tolerance) << ',' << (r.passed ? 1 : 0) << '\n';

    std::vector<std::pair<std::string, std::string>> worst;
    for (const auto& [name, value] : report.worst()) worst.emplace_back(name, format_number(value));
    write_metadata(dir / "verify.meta", c,
                   {{"verify", {{"fault_inject", fault ? "true" : "false"},
                                {"tuples", std::to_string(c.verify_tuples)},
                                {"passed", report.passed() ? "true" : "false"}}},
                    {"worst_residual", worst}});

    std::printf("verify: %zu tuples%s\n", c.verify_tuples, fault ? " (fault injected)" : "");
    for (const auto& [name, value] : report.worst()) std::printf("  %-22s worst %s\n", name.c_str(), format_number(value).c_str());
    std::size_t shown = 0;
    for (const auto& r : report.checks) {
        if (r.passed || shown++ >= 10) continue;
        std::printf("  FAIL %s tuple %zu (g=%s x0=%s p0=%s sx=%s sp=%s): %s >= %s\n", r.name.c_str(),
                    r.tuple, format_number(r.g).c_str(), format_number(r.x0).c_str(),
                    format_number(r.p0).c_str(), format_number(r.sigma_x).c_str(),
                    format_number(r.sigma_p).c_str(), format_number(r.residual).c_str(),
                    format_number(r.tolerance).c_str());
    }
    std::printf("%s\n", report.passed() ? "PASS" : "FAIL");
    return report.passed() ? 0 : 1;
}

std::string time_tag(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", t);
    return buf;
}

int cmd_evolve(const CommonOptions& o) {
    const Config c = load_config(o, false);
    const auto dir = prepare_out(o);
    const auto res = run_evolve(c, thread_count(o));
    write_table(dir / "evolve.csv", res.series);
    std::vector<std::pair<std::string, std::string>> files{{"table", "evolve.csv"}};
    for (const auto& snap : res.snapshots) {
        for (const auto& [method, field] : snap.fields) {
            const std::string name = "field_" + method + "_t" + time_tag(snap.t) + ".csv";
            std::ofstream out(dir / name);
            out << "x,p,f\n";
            for (std::size_t k = 0; k < field.grid.size(); ++k) {
                const PhasePoint z = field.grid.node(k);
                out << format_number(z.x) << ',' << format_number(z.p) << ','
                    << format_number(field.values[k]) << '\n';
            }
            files.emplace_back("field_" + method + "_" + time_tag(snap.t), name);
        }
    }
    write_metadata(dir / "evolve.meta", c, {{"files", files}, {"gates", gate_entries(res.gates)}});
    std::printf("evolve: %zu output times, %zu snapshots\n", res.series.size(), res.snapshots.size());
    print_gates(res.gates);
    std::printf("%s\n", res.passed() ? "PASS" : "FAIL");
    return res.passed() ? 0 : 1;
}

int cmd_distance(const CommonOptions& o) {
    const Config c = load_config(o, false);
    const auto dir = prepare_out(o);
    const auto res = run_distance(c, thread_count(o));
    write_table(dir / "distance.csv", res.series);
    write_metadata(dir / "distance.meta", c,
                   {{"summary", {{"slope_twa", format_number(res.slope_twa)},
                                 {"slope_vtwa", format_number(res.slope_vtwa)},
                                 {"fit_window", format_number(c.fit_t_lo) + "," + format_number(c.fit_t_hi)}}},
                    {"gates", gate_entries(res.gates)}});
    std::printf("distance: slope_twa %s, slope_vtwa %s over [%s, %s]\n",
                format_number(res.slope_twa).c_str(), format_number(res.slope_vtwa).c_str(),
                format_number(c.fit_t_lo).c_str(), format_number(c.fit_t_hi).c_str());
    print_gates(res.gates);
    std::printf("%s\n", res.passed() ? "PASS" : "FAIL");
    return res.passed() ? 0 : 1;
}

int cmd_sweep(const CommonOptions& o) {
    const Config c = load_config(o, false);
    const auto dir = prepare_out(o);
    const auto res = run_sweep(c, thread_count(o));
    write_sweep_table(dir / "sweep.csv", c.sweep_axis, res);
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& r : res.rows) rows.emplace_back(format_number(r.value), r.status);
    write_metadata(dir / "sweep.meta", c, {{"rows", rows}});
    std::printf("sweep over %s:\n", c.sweep_axis.c_str());
    for (const auto& r : res.rows) std::printf("  %-12s %s\n", format_number(r.value).c_str(), r.status.c_str());
    std::printf("%s\n", res.passed() ? "PASS" : "FAIL");
    return res.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian Wigner dynamics of the quartic oscillator: exact, TWA and variational TWA"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    CommonOptions opts;
    bool fault = false;
    auto* verify = app.add_subcommand("verify", "check the effective-Hamiltonian identities");
    add_common(verify, opts);
    verify->add_flag("--fault-inject", fault, "perturb one H_eff coefficient by 1e-3");
    auto* evolve = app.add_subcommand("evolve", "moments, ensembles and field snapshots");
    add_common(evolve, opts);
    auto* distance = app.add_subcommand("distance", "Hilbert-Schmidt distance to the exact state");
    add_common(distance, opts);
    auto* sweep = app.add_subcommand("sweep", "distance or sampling summary over one parameter");
    add_common(sweep, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) return cmd_verify(opts, fault);
        if (*evolve) return cmd_evolve(opts);
        if (*distance) return cmd_distance(opts);
        if (*sweep) return cmd_sweep(opts);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
