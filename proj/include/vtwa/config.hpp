/// @file config.hpp
/// @brief Flat key=value run configuration shared by all subcommands.

#ifndef VTWA_CONFIG_HPP
#define VTWA_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vtwa/phase_space.hpp"
#include "vtwa/semiclassics.hpp"

namespace vtwa {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Every field maps to one documented key (see Config::keys()).
struct Config {
    // model / state
    double g = 1.0;
    double x0 = 1.0;
    double p0 = 0.0;
    double sigma_x = 0.70710678118654752;
    double sigma_p = 0.70710678118654752;

    // time
    double t_max = 1.0;
    double dt = 1e-3;
    double output_every = 0.05;

    // grid
    double x_min = -6.0, x_max = 6.0, p_min = -6.0, p_max = 6.0;
    std::size_t n_x = 256, n_p = 256;

    // ensembles
    std::size_t ensemble_n = 100000;
    std::uint64_t ensemble_seed = 12345;
    /// Blown-up fraction that fails a TWA ensemble run.
    double twa_max_blowup = 1e-3;

    // fits and distance
    double fit_t_lo = 0.02;
    double fit_t_hi = 0.2;
    std::size_t fit_points = 12;
    /// Explicit distance times; empty selects the default schedule.
    std::vector<double> distance_times;
    double distance_floor = 1e-4;
    bool gate_scaling = true;

    std::vector<std::string> methods = {"exact", "twa", "vtwa"};

    // exact reference
    std::size_t n_levels = 384;
    std::size_t y_points = 512;
    double y_max = 6.0;
    /// 0 selects min(time.dt, RK4 stability step).
    double exact_dt = 0.0;
    bool convergence_check = true;
    double convergence_tol = 1e-8;

    std::vector<double> snapshot_times;

    // verify
    std::size_t verify_tuples = 100;
    std::uint64_t verify_seed = 2024;
    std::optional<double> verify_fixed_g;
    double verify_tolerance = 1e-10;

    // sweep
    std::string sweep_axis = "g";
    std::vector<double> sweep_values = {0.0, 0.1, 1.0};

    /// Applies one key=value assignment; unknown keys and bad values throw.
    void set(const std::string& key, const std::string& value);
    /// Parses a file of key=value lines; '#' starts a comment.
    void load(const std::filesystem::path& path);
    void load_text(const std::string& text);

    /// Every key with its current value, sorted by key.
    std::map<std::string, std::string> entries() const;
    static std::vector<std::string> keys();

    GaussianWignerState state() const;
    QuarticModel model() const;
    EffectiveParams params() const { return {model(), state()}; }
    PhaseGrid grid() const;
    bool has_method(const std::string& m) const;
};

/// "%.17g" formatting used for every number written to disk.
std::string format_number(double v);

}  // namespace vtwa

#endif  // VTWA_CONFIG_HPP
