/// @file experiments.hpp
/// @brief Orchestration behind the verify / evolve / distance / sweep
/// subcommands, plus table and metadata writers.

#ifndef VTWA_EXPERIMENTS_HPP
#define VTWA_EXPERIMENTS_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vtwa/config.hpp"
#include "vtwa/exact_quantum.hpp"
#include "vtwa/phase_space.hpp"

namespace vtwa {

std::string version_string();

/// One pass/fail gate with the value it was decided on.
struct Gate {
    std::string name;
    double value = 0.0;
    std::string requirement;
    bool passed = false;
};

bool all_passed(const std::vector<Gate>& gates);

// ---------------------------------------------------------------- verify

struct CheckResult {
    std::string name;
    std::size_t tuple = 0;
    double g = 0.0, x0 = 0.0, p0 = 0.0, sigma_x = 0.0, sigma_p = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool passed() const;
    /// Largest residual per check name.
    std::map<std::string, double> worst() const;
};

/// Deterministic parameter tuples: g in [0, 2] (or the fixed g), 2 sx sp in
/// [1, 3] with sx/sp in [1/2, 2], |x0|, |p0| <= 2.
std::vector<EffectiveParams> verify_tuples(const Config& config);

/// Algebraic suite over verify_tuples(). With fault injection the x^2
/// coefficient of H_eff is shifted by 1e-3 before the bracket checks.
VerifyReport run_verify(const Config& config, bool fault_inject = false);

// ------------------------------------------------------------- exact run

struct ExactRun {
    Eigen::MatrixXd hamiltonian;
    PropagationReport propagation;
    std::vector<Observables> observables;
    double dt_used = 0.0;
    double energy_drift_rate = 0.0;
    /// Max observable change against a 1.5x larger basis; NaN if not run.
    double convergence_shift = 0.0;
    std::size_t convergence_levels = 0;
};

/// Coherent-state reference dynamics at `times` (first time may be 0).
/// Throws ConfigError for states that are not minimal-uncertainty and isotropic.
ExactRun run_exact(const Config& config, const std::vector<double>& times);

/// Observables of a basis run at `n_levels`, used by the convergence gate.
std::vector<Observables> exact_observables(const Config& config, std::size_t n_levels,
                                           const std::vector<double>& times);

// ---------------------------------------------------------------- evolve

struct FieldSnapshot {
    double t = 0.0;
    std::vector<std::pair<std::string, WignerField>> fields;
};

struct EvolveResult {
    TimeSeries series;
    std::vector<FieldSnapshot> snapshots;
    std::vector<Gate> gates;
    bool passed() const { return all_passed(gates); }
};

EvolveResult run_evolve(const Config& config, unsigned threads);

// -------------------------------------------------------------- distance

struct DistanceResult {
    TimeSeries series;
    /// NaN when the window values sit at the numerical floor.
    double slope_twa = 0.0;
    double slope_vtwa = 0.0;
    std::vector<Gate> gates;
    bool passed() const { return all_passed(gates); }
};

/// {0} + fit.n_points log-spaced times in the fit window + quarter steps to t_max.
std::vector<double> distance_schedule(const Config& config);

DistanceResult run_distance(const Config& config, unsigned threads);

// ----------------------------------------------------------------- sweep

struct SweepRow {
    double value = 0.0;
    std::string status;
    std::map<std::string, double> fields;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::string> field_names;
    bool passed() const;
};

SweepResult run_sweep(const Config& config, unsigned threads);

// --------------------------------------------------------------- writers

/// CSV with a single header line "t,<columns...>".
void write_table(const std::filesystem::path& path, const TimeSeries& series);

/// CSV with header "<axis>,status,<field names...>".
void write_sweep_table(const std::filesystem::path& path, const std::string& axis,
                       const SweepResult& sweep);

/// Sidecar record: [config] with every key, then free-form sections.
using MetaSections = std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>;
void write_metadata(const std::filesystem::path& path, const Config& config,
                    const MetaSections& sections);

std::vector<std::pair<std::string, std::string>> gate_entries(const std::vector<Gate>& gates);

}  // namespace vtwa

#endif  // VTWA_EXPERIMENTS_HPP
