#include "vtwa/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>

#include "vtwa/effective_hamiltonian.hpp"
#include "vtwa/metrics.hpp"
#include "vtwa/poly_gauss.hpp"
#include "vtwa/semiclassics.hpp"

#ifndef VTWA_VERSION
#define VTWA_VERSION "unknown"
#endif

namespace vtwa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSumTolerance = 1e-12;
constexpr double kInvarianceTolerance = 1e-12;
constexpr double kFaultShift = 1e-3;
constexpr double kDriftTolerance = 1e-8;
constexpr double kFieldFloor = 1e-4;

Gate make_gate(std::string name, double value, std::string requirement, bool passed) {
    return {std::move(name), value, std::move(requirement), passed};
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string range_text(double lo, double hi) {
    return "in [" + short_number(lo) + ", " + short_number(hi) + "]";
}

// Uniform output mesh 0, every, 2 every, ..., t_max (t_max always included).
std::vector<double> output_mesh(double t_max, double every) {
    if (!(t_max > 0.0)) throw ConfigError("time.t_max must be positive");
    if (!(every > 0.0)) throw ConfigError("time.output_every must be positive");
    std::vector<double> times{0.0};
    for (std::size_t k = 1;; ++k) {
        const double t = every * static_cast<double>(k);
        if (t >= t_max * (1.0 - 1e-12)) break;
        times.push_back(t);
    }
    times.push_back(t_max);
    return times;
}

void check_times(const std::vector<double>& times, double t_max, const std::string& key) {
    for (double t : times)
        if (!(t >= 0.0) || t > t_max * (1.0 + 1e-12))
            throw ConfigError(key + ": time " + format_number(t) + " outside [0, time.t_max]");
}

void require_pure_isotropic(const Config& config) {
    const auto state = config.state();
    if (!state.is_minimal(1e-12) || std::abs(state.sigma_x() - state.sigma_p()) > 1e-12)
        throw ConfigError(
            "exact reference needs a coherent state (sigma_x = sigma_p = 1/sqrt(2)), got sigma_x = " +
            format_number(state.sigma_x()) + ", sigma_p = " + format_number(state.sigma_p()));
}

double max_observable_shift(const std::vector<Observables>& a, const std::vector<Observables>& b) {
    double shift = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        shift = std::max({shift, std::abs(a[k].mean_x - b[k].mean_x),
                          std::abs(a[k].mean_p - b[k].mean_p),
                          std::abs(a[k].mean_x2 - b[k].mean_x2),
                          std::abs(a[k].mean_x3 - b[k].mean_x3),
                          std::abs(a[k].energy - b[k].energy)});
    }
    return shift;
}

void add_exact_gates(std::vector<Gate>& gates, const Config& config, const ExactRun& run) {
    gates.push_back(make_gate("exact_norm_drift_rate", run.propagation.norm_drift_rate,
                              "< " + short_number(kDriftTolerance),
                              run.propagation.norm_drift_rate < kDriftTolerance));
    gates.push_back(make_gate("exact_energy_drift_rate", run.energy_drift_rate,
                              "< " + short_number(kDriftTolerance),
                              run.energy_drift_rate < kDriftTolerance));
    if (config.convergence_check)
        gates.push_back(make_gate("exact_basis_shift_" + std::to_string(config.n_levels) + "_to_" +
                                      std::to_string(run.convergence_levels),
                                  run.convergence_shift, "< " + short_number(config.convergence_tol),
                                  run.convergence_shift < config.convergence_tol));
}

WignerTransformOptions transform_options(const Config& config, unsigned threads) {
    WignerTransformOptions o;
    o.y_points = config.y_points;
    o.y_max = config.y_max;
    o.threads = threads;
    // Mass leaving the grid is reported as a column rather than aborting.
    o.normalization_tolerance = std::numeric_limits<double>::infinity();
    return o;
}

std::vector<Method> classical_methods(const Config& config) {
    std::vector<Method> out;
    if (config.has_method("twa")) out.push_back(Method::TWA);
    if (config.has_method("vtwa")) out.push_back(Method::VTWA);
    return out;
}

}  // namespace

std::string version_string() { return VTWA_VERSION; }

bool all_passed(const std::vector<Gate>& gates) {
    return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.passed; });
}

// ---------------------------------------------------------------- verify

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::map<std::string, double> VerifyReport::worst() const {
    std::map<std::string, double> out;
    for (const auto& c : checks) {
        auto [it, inserted] = out.emplace(c.name, c.residual);
        if (!inserted) it->second = std::max(it->second, c.residual);
    }
    return out;
}

std::vector<EffectiveParams> verify_tuples(const Config& config) {
    std::vector<EffectiveParams> out;
    out.reserve(config.verify_tuples);
    for (std::size_t i = 0; i < config.verify_tuples; ++i) {
        auto u = [&](std::uint64_t k) { return counter_uniform(config.verify_seed, 8 * i + k); };
        const double g = config.verify_fixed_g ? *config.verify_fixed_g : 2.0 * u(0);
        const double product = 1.0 + 2.0 * u(1);
        const double ratio = std::exp2(2.0 * u(2) - 1.0);
        const double sx = std::sqrt(0.5 * product * ratio);
        const double sp = std::sqrt(0.5 * product / ratio);
        const double x0 = 4.0 * u(3) - 2.0;
        const double p0 = 4.0 * u(4) - 2.0;
        out.push_back({QuarticModel(g), GaussianWignerState(x0, p0, sx, sp)});
    }
    return out;
}

VerifyReport run_verify(const Config& config, bool fault_inject) {
    VerifyReport report;
    const auto tuples = verify_tuples(config);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        const auto& params = tuples[i];
        const auto& st = params.state;
        const PolyGauss f = PolyGauss::gaussian(st);
        const PolyGauss h = quartic_hamiltonian(params.model, st);
        const PolyGauss hc = build_Hc(params);
        PolyGauss heff = build_H_eff(params);
        if (fault_inject) heff = heff + PolyGauss::monomial(st, 2, 0, kFaultShift);

        auto add = [&](std::string name, double residual, double tol) {
            CheckResult c;
            c.name = std::move(name);
            c.tuple = i;
            c.g = params.model.g();
            c.x0 = st.x0();
            c.p0 = st.p0();
            c.sigma_x = st.sigma_x();
            c.sigma_p = st.sigma_p();
            c.residual = residual;
            c.tolerance = tol;
            c.passed = residual < tol || (residual == 0.0 && tol == 0.0);
            report.checks.push_back(c);
        };

        add("euler_lagrange", el_residual(params, heff), config.verify_tolerance);
        add("correction_equation", hc_equation_residual(params, hc), config.verify_tolerance);
        add("jump_distribution",
            pg_relative_residual(poisson(heff, f), moyal_quartic(params.model, f)),
            config.verify_tolerance);
        add("sum_identity", pg_relative_residual(h + hc, heff), kSumTolerance);

        // u(Q) = Q: the Liouville rate and the centroid velocity must not move.
        const PolyGauss shifted = heff + PolyGauss::quadratic_form(st);
        const double rate = pg_relative_residual(poisson(shifted, f), poisson(heff, f));
        const PhasePoint v0 = symplectic_velocity(heff, st.centroid());
        const PhasePoint v1 = symplectic_velocity(shifted, st.centroid());
        const double scale = std::max({std::abs(v0.x), std::abs(v0.p), 1.0});
        const double vel = std::max(std::abs(v1.x - v0.x), std::abs(v1.p - v0.p)) / scale;
        add("u_invariance", std::max(rate, vel), kInvarianceTolerance);
    }
    return report;
}

// ------------------------------------------------------------- exact run

std::vector<Observables> exact_observables(const Config& config, std::size_t n_levels,
                                           const std::vector<double>& times) {
    const auto h = build_hamiltonian_matrix(config.model(), n_levels);
    const double dt = config.exact_dt > 0.0 ? config.exact_dt
                                            : std::min(config.dt, stable_time_step(h));
    const auto rep = propagate(coherent_coeffs(config.x0, config.p0, n_levels), h, times, dt);
    std::vector<Observables> out;
    out.reserve(rep.snapshots.size());
    for (const auto& s : rep.snapshots) out.push_back(observables(s, h));
    return out;
}

ExactRun run_exact(const Config& config, const std::vector<double>& times) {
    require_pure_isotropic(config);
    ExactRun run;
    run.hamiltonian = build_hamiltonian_matrix(config.model(), config.n_levels);
    run.dt_used = config.exact_dt > 0.0 ? config.exact_dt
                                        : std::min(config.dt, stable_time_step(run.hamiltonian));
    run.propagation = propagate(coherent_coeffs(config.x0, config.p0, config.n_levels),
                                run.hamiltonian, times, run.dt_used);
    for (const auto& s : run.propagation.snapshots)
        run.observables.push_back(observables(s, run.hamiltonian));

    const double e0 = observables(coherent_coeffs(config.x0, config.p0, config.n_levels),
                                  run.hamiltonian).energy;
    for (std::size_t k = 0; k < times.size(); ++k)
        if (times[k] > 0.0)
            run.energy_drift_rate = std::max(run.energy_drift_rate,
                                             std::abs(run.observables[k].energy - e0) / times[k]);

    run.convergence_shift = kNaN;
    if (config.convergence_check) {
        run.convergence_levels = (3 * config.n_levels + 1) / 2;
        run.convergence_shift =
            max_observable_shift(run.observables,
                                 exact_observables(config, run.convergence_levels, times));
    }
    return run;
}

// ---------------------------------------------------------------- evolve

EvolveResult run_evolve(const Config& config, unsigned threads) {
    const auto times = output_mesh(config.t_max, config.output_every);
    check_times(config.snapshot_times, config.t_max, "snapshots.times");
    const EffectiveParams params = config.params();
    const auto state = config.state();
    const auto methods = classical_methods(config);

    EvolveResult result;
    result.series = TimeSeries(times);
    auto& series = result.series;

    std::optional<ExactRun> exact;
    if (config.has_method("exact")) {
        exact = run_exact(config, times);
        std::vector<double> mx, mp, e;
        for (const auto& o : exact->observables) {
            mx.push_back(o.mean_x);
            mp.push_back(o.mean_p);
            e.push_back(o.energy);
        }
        series.add_column("mean_x_exact", std::move(mx));
        series.add_column("mean_p_exact", std::move(mp));
        series.add_column("energy_exact", std::move(e));
        add_exact_gates(result.gates, config, *exact);
    }

    const CentroidTrack track = CentroidTrack::integrate(params, config.t_max, config.dt);
    if (config.has_method("vtwa")) {
        std::vector<double> x0, p0;
        for (double t : times) {
            const PhasePoint c = track.at(t);
            x0.push_back(c.x);
            p0.push_back(c.p);
        }
        series.add_column("x0_vtwa", std::move(x0));
        series.add_column("p0_vtwa", std::move(p0));
    }
    if (config.has_method("twa")) {
        const auto cl = classical_trajectory(config.model(), state.centroid(), times, config.dt);
        series.add_column("x0_twa_classical", cl.column("x"));
        series.add_column("p0_twa_classical", cl.column("p"));
    }

    if (config.ensemble_n > 0 && !methods.empty()) {
        const auto ensemble = sample_ensemble(state, config.ensemble_n, config.ensemble_seed, threads);
        for (Method m : methods) {
            PropagationOptions opt;
            opt.threads = threads;
            // vTWA characteristics can leave to infinity; their loss is reported, not fatal.
            opt.max_blow_up_fraction = m == Method::TWA ? config.twa_max_blowup : 1.0;
            const auto run = propagate_ensemble(m, params, ensemble, times, config.dt, &track, opt);
            const std::string tag = to_string(m);
            std::vector<double> mx, mp, vx, vp, lost;
            for (std::size_t k = 0; k < times.size(); ++k) {
                const auto& snap = run.snapshots[k];
                const PhasePoint mean = snap.mean();
                const PhasePoint var = snap.variance();
                mx.push_back(mean.x);
                mp.push_back(mean.p);
                vx.push_back(var.x);
                vp.push_back(var.p);
                lost.push_back(1.0 - static_cast<double>(snap.size()) /
                                         static_cast<double>(config.ensemble_n));
            }
            series.add_column("mean_x_" + tag, std::move(mx));
            series.add_column("mean_p_" + tag, std::move(mp));
            series.add_column("var_x_" + tag, std::move(vx));
            series.add_column("var_p_" + tag, std::move(vp));
            series.add_column("escaped_" + tag, std::move(lost));
        }
    }

    if (config.g == 0.0 && exact) {
        double err = 0.0;
        const auto& ex = series.column("mean_x_exact");
        const auto& ep = series.column("mean_p_exact");
        for (const char* tag : {"vtwa", "twa_classical"}) {
            const std::string s(tag);
            if (!series.has_column("x0_" + s)) continue;
            const auto& cx = series.column("x0_" + s);
            const auto& cp = series.column("p0_" + s);
            for (std::size_t k = 0; k < times.size(); ++k)
                err = std::max({err, std::abs(cx[k] - ex[k]), std::abs(cp[k] - ep[k])});
        }
        result.gates.push_back(make_gate("harmonic_centroid_agreement", err, "< 1e-08", err < 1e-8));
    }

    if (!config.snapshot_times.empty()) {
        std::vector<double> snap_times = config.snapshot_times;
        std::sort(snap_times.begin(), snap_times.end());
        snap_times.erase(std::unique(snap_times.begin(), snap_times.end()), snap_times.end());
        const PhaseGrid grid = config.grid();
        std::optional<PropagationReport> basis;
        if (exact) {
            basis = propagate(coherent_coeffs(config.x0, config.p0, config.n_levels),
                              exact->hamiltonian, snap_times, exact->dt_used);
        }
        BackwardMapOptions bopt;
        bopt.threads = threads;
        for (std::size_t k = 0; k < snap_times.size(); ++k) {
            FieldSnapshot snap{snap_times[k], {}};
            if (basis)
                snap.fields.emplace_back(
                    "exact", wigner_from_basis(basis->snapshots[k], grid, transform_options(config, threads)));
            for (Method m : methods)
                snap.fields.emplace_back(
                    to_string(m),
                    backward_map(m, params, grid, snap_times[k], config.dt, &track, bopt).field);
            result.snapshots.push_back(std::move(snap));
        }
    }
    return result;
}

// -------------------------------------------------------------- distance

std::vector<double> distance_schedule(const Config& config) {
    std::vector<double> times;
    if (!config.distance_times.empty()) {
        times = config.distance_times;
    } else {
        if (!(config.fit_t_lo > 0.0) || !(config.fit_t_hi > config.fit_t_lo))
            throw ConfigError("fit window must satisfy 0 < fit.t_lo < fit.t_hi");
        if (config.fit_points < 2) throw ConfigError("fit.n_points must be >= 2");
        times.push_back(0.0);
        const double r = std::log(config.fit_t_hi / config.fit_t_lo);
        for (std::size_t i = 0; i < config.fit_points; ++i) {
            const double s = static_cast<double>(i) / static_cast<double>(config.fit_points - 1);
            times.push_back(i + 1 == config.fit_points ? config.fit_t_hi
                                                       : config.fit_t_lo * std::exp(r * s));
        }
        for (double t = 0.25; t < config.t_max + 1e-12; t += 0.25)
            if (t > config.fit_t_hi) times.push_back(t);
        if (config.t_max > times.back()) times.push_back(config.t_max);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    check_times(times, config.t_max, "distance.times");
    return times;
}

DistanceResult run_distance(const Config& config, unsigned threads) {
    if (!config.has_method("exact")) throw ConfigError("distance needs the exact method");
    const auto methods = classical_methods(config);
    if (methods.empty()) throw ConfigError("distance needs twa and/or vtwa");

    const auto times = distance_schedule(config);
    const EffectiveParams params = config.params();
    const PhaseGrid grid = config.grid();

    DistanceResult result;
    result.slope_twa = kNaN;
    result.slope_vtwa = kNaN;
    result.series = TimeSeries(times);

    const ExactRun exact = run_exact(config, times);
    std::vector<WignerField> exact_fields;
    std::vector<double> pur_e, mass_e;
    for (const auto& s : exact.propagation.snapshots) {
        exact_fields.push_back(wigner_from_basis(s, grid, transform_options(config, threads)));
        pur_e.push_back(purity(exact_fields.back()));
        mass_e.push_back(integrate_grid(exact_fields.back()));
    }

    const std::optional<CentroidTrack> track =
        std::find(methods.begin(), methods.end(), Method::VTWA) != methods.end()
            ? std::optional<CentroidTrack>(CentroidTrack::integrate(params, times.back(), config.dt))
            : std::nullopt;

    BackwardMapOptions bopt;
    bopt.threads = threads;
    std::map<Method, std::vector<double>> d2;
    for (Method m : methods) {
        std::vector<double> dist, pur, mass, lost;
        for (std::size_t k = 0; k < times.size(); ++k) {
            const auto bm = backward_map(m, params, grid, times[k], config.dt,
                                         track ? &*track : nullptr, bopt);
            dist.push_back(hs_distance(exact_fields[k], bm.field));
            pur.push_back(purity(bm.field));
            mass.push_back(integrate_grid(bm.field));
            lost.push_back(static_cast<double>(bm.escaped) / static_cast<double>(grid.size()));
        }
        const std::string tag = to_string(m);
        d2[m] = dist;
        result.series.add_column("d2_" + tag, std::move(dist));
        result.series.add_column("purity_" + tag, std::move(pur));
        result.series.add_column("mass_" + tag, std::move(mass));
        result.series.add_column("escaped_" + tag, std::move(lost));
    }
    result.series.add_column("purity_exact", std::move(pur_e));
    result.series.add_column("mass_exact", std::move(mass_e));

    // Slopes are undefined when any window value sits at the numerical floor.
    auto in_window = [&](double t) { return t >= config.fit_t_lo && t <= config.fit_t_hi; };
    for (Method m : methods) {
        bool floor_hit = false;
        std::size_t count = 0;
        for (std::size_t k = 0; k < times.size(); ++k)
            if (in_window(times[k])) {
                ++count;
                floor_hit = floor_hit || !(d2[m][k] >= config.distance_floor);
            }
        double slope = kNaN;
        if (!floor_hit && count >= 5)
            slope = loglog_slope(result.series, "d2_" + to_string(m), config.fit_t_lo, config.fit_t_hi);
        (m == Method::TWA ? result.slope_twa : result.slope_vtwa) = slope;
    }

    auto& gates = result.gates;
    add_exact_gates(gates, config, exact);
    if (times.front() == 0.0) {
        gates.push_back(make_gate("exact_mass_t0", std::abs(result.series.column("mass_exact")[0] - 1.0),
                                  "< 1e-04", std::abs(result.series.column("mass_exact")[0] - 1.0) < 1e-4));
        for (Method m : methods)
            gates.push_back(make_gate("d2_t0_" + to_string(m), d2[m][0], "< 1e-04", d2[m][0] < kFieldFloor));
    }
    if (config.g == 0.0) {
        for (Method m : methods) {
            const double worst = *std::max_element(d2[m].begin(), d2[m].end());
            gates.push_back(make_gate("d2_floor_" + to_string(m), worst,
                                      "< " + short_number(config.distance_floor),
                                      worst < config.distance_floor));
        }
    } else if (config.gate_scaling) {
        if (d2.count(Method::TWA))
            gates.push_back(make_gate("slope_twa", result.slope_twa, range_text(0.85, 1.15),
                                      result.slope_twa >= 0.85 && result.slope_twa <= 1.15));
        if (d2.count(Method::VTWA))
            gates.push_back(make_gate("slope_vtwa", result.slope_vtwa, range_text(1.8, 2.2),
                                      result.slope_vtwa >= 1.8 && result.slope_vtwa <= 2.2));
        if (d2.count(Method::TWA) && d2.count(Method::VTWA)) {
            // Largest ratio D2_vtwa / D2_twa over the window; ordering holds iff < 1.
            double ratio = 0.0;
            for (std::size_t k = 0; k < times.size(); ++k)
                if (in_window(times[k]))
                    ratio = std::max(ratio, d2[Method::VTWA][k] / d2[Method::TWA][k]);
            gates.push_back(make_gate("d2_ordering_max_ratio", ratio, "< 1", ratio < 1.0));
        }
    }
    return result;
}

// ----------------------------------------------------------------- sweep

bool SweepResult::passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status == "ok"; });
}

SweepResult run_sweep(const Config& config, unsigned threads) {
    if (config.sweep_values.empty()) throw ConfigError("sweep.values is empty");
    SweepResult sweep;
    const bool sampling = config.sweep_axis == "sigma_scale";
    if (sampling) {
        sweep.field_names = {"mean_x_twa", "var_x_twa", "escaped_twa",
                             "mean_x_vtwa", "var_x_vtwa", "escaped_vtwa", "x0_vtwa"};
    } else {
        sweep.field_names = {"slope_twa", "slope_vtwa", "d2_twa_t_hi", "d2_vtwa_t_hi",
                             "d2_twa_t_max", "d2_vtwa_t_max", "gates_failed"};
    }

    for (double v : config.sweep_values) {
        SweepRow row;
        row.value = v;
        for (const auto& name : sweep.field_names) row.fields[name] = kNaN;
        Config c = config;
        try {
            if (config.sweep_axis == "g") {
                c.g = v;
            } else if (config.sweep_axis == "x0") {
                c.x0 = v;
            } else {
                c.sigma_x *= v;
                c.sigma_p *= v;
            }
            if (sampling) {
                c.methods = {"twa", "vtwa"};
                c.snapshot_times.clear();
                const auto ev = run_evolve(c, threads);
                const std::size_t last = ev.series.size() - 1;
                for (const auto& name : sweep.field_names)
                    if (ev.series.has_column(name)) row.fields[name] = ev.series.column(name)[last];
                row.status = ev.passed() ? "ok" : "gates_failed";
            } else {
                const auto d = run_distance(c, threads);
                row.fields["slope_twa"] = d.slope_twa;
                row.fields["slope_vtwa"] = d.slope_vtwa;
                const auto& ts = d.series.times();
                const auto hi = std::find_if(ts.begin(), ts.end(),
                                             [&](double t) { return t >= c.fit_t_hi; });
                for (const char* tag : {"twa", "vtwa"}) {
                    const std::string col = std::string("d2_") + tag;
                    if (!d.series.has_column(col)) continue;
                    const auto& vals = d.series.column(col);
                    if (hi != ts.end()) row.fields[col + "_t_hi"] = vals[static_cast<std::size_t>(hi - ts.begin())];
                    row.fields[col + "_t_max"] = vals.back();
                }
                const auto failed = std::count_if(d.gates.begin(), d.gates.end(),
                                                  [](const Gate& g) { return !g.passed; });
                row.fields["gates_failed"] = static_cast<double>(failed);
                row.status = failed ? "gates_failed" : "ok";
            }
        } catch (const std::exception& e) {
            std::string msg = e.what();
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            row.status = "error: " + msg;
        }
        sweep.rows.push_back(std::move(row));
    }
    return sweep;
}

// --------------------------------------------------------------- writers

void write_table(const std::filesystem::path& path, const TimeSeries& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "t";
    for (const auto& [name, values] : series.columns()) out << ',' << name;
    out << '\n';
    for (std::size_t k = 0; k < series.size(); ++k) {
        out << format_number(series.times()[k]);
        for (const auto& [name, values] : series.columns()) out << ',' << format_number(values[k]);
        out << '\n';
    }
}

void write_sweep_table(const std::filesystem::path& path, const std::string& axis,
                       const SweepResult& sweep) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << axis << ",status";
    for (const auto& name : sweep.field_names) out << ',' << name;
    out << '\n';
    for (const auto& row : sweep.rows) {
        out << format_number(row.value) << ',' << row.status;
        for (const auto& name : sweep.field_names) out << ',' << format_number(row.fields.at(name));
        out << '\n';
    }
}

void write_metadata(const std::filesystem::path& path, const Config& config,
                    const MetaSections& sections) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "[run]\nversion = " << version_string() << "\n\n[config]\n";
    for (const auto& [key, value] : config.entries()) out << key << " = " << value << '\n';
    for (const auto& [name, entries] : sections) {
        out << "\n[" << name << "]\n";
        for (const auto& [key, value] : entries) out << key << " = " << value << '\n';
    }
}

std::vector<std::pair<std::string, std::string>> gate_entries(const std::vector<Gate>& gates) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& g : gates)
        out.emplace_back(g.name, format_number(g.value) + " " + g.requirement + " " +
                                     (g.passed ? "pass" : "FAIL"));
    return out;
}

}  // namespace vtwa
