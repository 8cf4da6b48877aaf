// Acceptance run: one [PASS]/[FAIL] line per criterion, indented details below.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "vtwa/effective_hamiltonian.hpp"
#include "vtwa/exact_quantum.hpp"
#include "vtwa/experiments.hpp"
#include "vtwa/metrics.hpp"
#include "vtwa/parallel.hpp"
#include "vtwa/semiclassics.hpp"

using namespace vtwa;

namespace {

struct Criterion {
    int id;
    std::string title;
    bool passed = true;
    std::vector<std::string> details;

    void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Criterion::check(bool ok, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + buf);
    passed = passed && ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

void report(const Criterion& c) {
    std::printf("[%s] criterion %d: %s\n", c.passed ? "PASS" : "FAIL", c.id, c.title.c_str());
    for (const auto& d : c.details) std::printf("       %s\n", d.c_str());
    std::fflush(stdout);
}

// Symplectic gradient by the five-point central difference.
PhasePoint fd_velocity(const PolyGauss& h, PhasePoint z) {
    const double e = 1e-3;
    auto d = [&](double dx, double dp) {
        auto f = [&](double s) { return pg_eval(h, {z.x + s * dx, z.p + s * dp}); };
        return (-f(2 * e) + 8 * f(e) - 8 * f(-e) + f(-2 * e)) / (12 * e);
    };
    return {d(0, 1), -d(1, 0)};
}

double d2_at(const DistanceResult& r, const std::string& method, double t) {
    const auto& times = r.series.times();
    const auto it = std::find(times.begin(), times.end(), t);
    if (it == times.end()) return std::nan("");
    return r.series.column("d2_" + method)[static_cast<std::size_t>(it - times.begin())];
}

// ------------------------------------------------------------------- 1

Criterion algebraic_suite() {
    Criterion c{1, "algebraic theorem suite over 100 tuples"};
    const Config config;
    const auto t0 = std::chrono::steady_clock::now();
    const auto ok = run_verify(config);
    const double elapsed = seconds_since(t0);
    for (const char* name : {"euler_lagrange", "correction_equation", "jump_distribution"}) {
        const double worst = ok.worst().at(name);
        c.check(worst < 1e-10, "%s: worst residual %.3g < 1e-10", name, worst);
    }
    c.check(ok.checks.size() / 5 == 100, "%zu tuples", ok.checks.size() / 5);
    c.check(elapsed < 10.0, "runtime %.2f s < 10 s", elapsed);
    const auto bad = run_verify(config, true);
    c.check(!bad.passed(), "fault injection flips the suite (worst Euler-Lagrange residual %.3g)",
            bad.worst().at("euler_lagrange"));
    return c;
}

// ------------------------------------------------------------------- 2

Criterion structural_identities() {
    Criterion c{2, "structural identities"};
    const auto tuples = verify_tuples(Config{});
    double sum = 0.0, fd = 0.0, centroid = 0.0, uq = 0.0;
    for (const auto& p : tuples) {
        const auto heff = build_H_eff(p);
        sum = std::max(sum, pg_relative_residual(quartic_hamiltonian(p.model, p.state) + build_Hc(p), heff));

        const auto z0 = p.state.centroid();
        for (PhasePoint z : {z0, PhasePoint{z0.x + 0.7, z0.p - 0.4}, PhasePoint{-1.3, 1.1}}) {
            const auto v = vtwa_rhs(p, z0, z);
            const auto w = fd_velocity(heff, z);
            const double scale = std::max({std::abs(v.x), std::abs(v.p), 1e-300});
            fd = std::max({fd, std::abs(v.x - w.x) / scale, std::abs(v.p - w.p) / scale});
        }

        const auto a = centroid_rhs(p, z0), b = vtwa_rhs(p, z0, z0);
        centroid = std::max({centroid, rel(a.x, b.x), rel(a.p, b.p)});

        // u(Q) = Q: the transport of the ansatz and the centroid velocity.
        const auto f = PolyGauss::gaussian(p.state);
        const auto shifted = heff + PolyGauss::quadratic_form(p.state);
        uq = std::max(uq, pg_relative_residual(poisson(shifted, f), poisson(heff, f)));
        const auto va = symplectic_velocity(heff, z0), vb = symplectic_velocity(shifted, z0);
        uq = std::max({uq, rel(va.x, vb.x), rel(va.p, vb.p)});
    }
    c.check(sum < 1e-12, "H + H_c = H_eff: worst relative residual %.3g < 1e-12", sum);
    c.check(fd < 1e-8, "vtwa_rhs against finite-difference gradient: worst rtol %.3g < 1e-8", fd);
    c.check(centroid < 1e-12, "vtwa_rhs at the centroid equals centroid_rhs: worst rtol %.3g < 1e-12", centroid);
    c.check(uq < 1e-12, "u(Q) = Q leaves the Liouville rate and centroid velocity unchanged: worst %.3g < 1e-12", uq);
    return c;
}

// ------------------------------------------------------------------- 3

Criterion limits() {
    Criterion c{3, "limits: g = 0, broad momentum, minimal uncertainty"};
    const unsigned threads = default_thread_count();

    // Moyal = Poisson and H_eff = H without coupling.
    Config zero;
    zero.verify_fixed_g = 0.0;
    double moyal = 0.0, heff = 0.0;
    for (const auto& p : verify_tuples(zero)) {
        const auto f = PolyGauss::gaussian(p.state);
        const auto h = quartic_hamiltonian(p.model, p.state);
        moyal = std::max(moyal, pg_max_abs_coeff(moyal_quartic(p.model, f) - poisson(h, f)));
        heff = std::max(heff, pg_max_abs_coeff(build_H_eff(p) - h));
    }
    c.check(moyal == 0.0, "g = 0: Moyal - Poisson max coefficient %.3g", moyal);
    c.check(heff == 0.0, "g = 0: H_eff - H max coefficient %.3g", heff);

    // Exact, TWA and vTWA fields on the default grid up to one period.
    const EffectiveParams p{QuarticModel(0.0), GaussianWignerState::coherent(1.0, 0.0)};
    const auto grid = PhaseGrid::default_grid();
    const std::size_t n = 64;
    const auto h = build_hamiltonian_matrix(p.model, n);
    const std::vector<double> times{1.0, kPi, 2 * kPi};
    const auto rep = propagate(coherent_coeffs(1.0, 0.0, n), h, times, 1e-3);
    const auto track = CentroidTrack::integrate(p, times.back(), 1e-3);
    WignerTransformOptions wo;
    wo.threads = threads;
    BackwardMapOptions bo;
    bo.threads = threads;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const auto fe = wigner_from_basis(rep.snapshots[k], grid, wo);
        const auto ft = backward_map(Method::TWA, p, grid, times[k], 1e-3, nullptr, bo).field;
        const auto fv = backward_map(Method::VTWA, p, grid, times[k], 1e-3, &track, bo).field;
        const double worst = std::max({sup_norm_difference(fe, ft), sup_norm_difference(fe, fv),
                                       sup_norm_difference(ft, fv)});
        c.check(worst < 1e-4, "g = 0, t = %.4f: largest pairwise sup-norm difference %.3g < 1e-4", times[k], worst);
    }

    // sigma_p = 1e6: centroid equations become the classical ones.
    double broad = 0.0;
    for (double x0 : {-1.7, 0.3, 1.0, 2.0})
        for (double g : {0.5, 1.0, 2.0}) {
            const EffectiveParams q{QuarticModel(g), GaussianWignerState(x0, 0.4, std::sqrt(0.5), 1e6)};
            const auto a = centroid_rhs(q, {x0, 0.4});
            const auto b = twa_rhs(q.model, {x0, 0.4});
            broad = std::max({broad, rel(a.x, b.x), rel(a.p, b.p)});
        }
    c.check(broad < 1e-6, "sigma_p = 1e6: centroid_rhs against classical rtol %.3g < 1e-6", broad);

    // 2 sx sp = 1: no pure x^4 term.
    double quartic = 0.0;
    for (auto [sx, sp] : {std::pair{std::sqrt(0.5), std::sqrt(0.5)}, std::pair{0.5, 1.0}, std::pair{0.25, 2.0},
                          std::pair{2.0, 0.25}})
        for (double g : {0.3, 1.0, 2.0}) {
            const EffectiveParams q{QuarticModel(g), GaussianWignerState(0.8, -0.3, sx, sp)};
            quartic = std::max(quartic, std::abs(build_H_eff(q).coeff(4, 0)));
        }
    c.check(quartic == 0.0, "2 sx sp = 1: largest x^4 coefficient of H_eff %.3g", quartic);
    return c;
}

// ------------------------------------------------------------------- 4

Criterion ehrenfest() {
    Criterion c{4, "Ehrenfest consistency at g = 1, (x0, p0) = (1, 0)"};
    const auto t0 = std::chrono::steady_clock::now();
    const Config config;
    const auto p = config.params();
    const auto h = build_hamiltonian_matrix(p.model, config.n_levels);
    const double step = 1e-4;
    const auto rep = propagate(coherent_coeffs(1.0, 0.0, config.n_levels), h, {0.0, step},
                               std::min(step, stable_time_step(h)));
    const double dpdt = (observables(rep.snapshots[1], h).mean_p - observables(rep.snapshots[0], h).mean_p) / step;
    const double cent = centroid_rhs(p, p.state.centroid()).p;
    const double classical = twa_rhs(p.model, p.state.centroid()).p;
    c.check(std::abs(dpdt - cent) < 1e-4 && cent == -3.5, "exact d<p>/dt = %.8f, centroid_rhs = %.6g (within 1e-4)",
            dpdt, cent);
    c.check(classical == -2.0, "classical force %.6g", classical);

    const std::vector<double> times{0.0, 0.1, 0.2};
    Config short_run = config;
    short_run.t_max = 0.2;
    const auto ex = run_exact(short_run, times);
    const auto track = CentroidTrack::integrate(p, 0.2, config.dt);
    const auto cl = classical_trajectory(p.model, p.state.centroid(), times, config.dt);
    const double err_v = std::abs(track.at(0.2).x - ex.observables[2].mean_x);
    const double err_t = std::abs(cl.column("x")[2] - ex.observables[2].mean_x);
    c.check(err_v <= 0.5 * err_t, "t = 0.2: centroid error %.3g <= half the classical error %.3g", err_v, err_t);
    const double elapsed = seconds_since(t0);
    c.check(elapsed < 120.0, "runtime %.1f s < 120 s", elapsed);
    return c;
}

// ------------------------------------------------------------------- 5

Criterion distance_scaling(DistanceResult& base) {
    Criterion c{5, "distance scaling over t in [0.02, 0.2]"};
    const Config config;
    const auto t0 = std::chrono::steady_clock::now();
    base = run_distance(config, default_thread_count());
    const double elapsed = seconds_since(t0);
    c.check(base.slope_twa >= 0.85 && base.slope_twa <= 1.15, "TWA slope %.4f in [0.85, 1.15]", base.slope_twa);
    c.check(base.slope_vtwa >= 1.8 && base.slope_vtwa <= 2.2, "vTWA slope %.4f in [1.8, 2.2]", base.slope_vtwa);
    const auto& times = base.series.times();
    const auto& dt = base.series.column("d2_twa");
    const auto& dv = base.series.column("d2_vtwa");
    std::size_t inside = 0, ordered = 0;
    double worst = 0.0, worst_t = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] < config.fit_t_lo || times[k] > config.fit_t_hi) continue;
        ++inside;
        if (dv[k] < dt[k]) ++ordered;
        if (dv[k] / dt[k] > worst) {
            worst = dv[k] / dt[k];
            worst_t = times[k];
        }
    }
    c.check(ordered == inside, "D2_vTWA < D2_TWA at %zu of %zu window times (largest ratio %.3f at t = %.4f)", ordered,
            inside, worst, worst_t);
    c.check(elapsed < 600.0, "runtime %.1f s < 600 s (%zu levels, %zux%zu grid, dt %g)", elapsed, config.n_levels,
            config.n_x, config.n_p, config.dt);
    return c;
}

// ------------------------------------------------------------------- 6

Config single_time(Config c) {
    c.distance_times = {c.t_max};
    c.gate_scaling = false;
    c.convergence_check = false;
    return c;
}

Criterion hygiene(const DistanceResult& base) {
    Criterion c{6, "numerical hygiene"};
    const unsigned threads = default_thread_count();
    const Config config;

    std::vector<double> times;
    for (int k = 0; k <= 20; ++k) times.push_back(0.05 * k);
    const auto ex = run_exact(config, times);
    c.check(ex.propagation.norm_drift_rate < 1e-8, "norm drift %.3g per unit time < 1e-8",
            ex.propagation.norm_drift_rate);
    c.check(ex.energy_drift_rate < 1e-8, "energy drift %.3g per unit time < 1e-8", ex.energy_drift_rate);

    auto shift = [&](std::size_t a, std::size_t b) {
        const auto oa = exact_observables(config, a, times), ob = exact_observables(config, b, times);
        double worst = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k)
            worst = std::max({worst, std::abs(oa[k].mean_x - ob[k].mean_x), std::abs(oa[k].mean_p - ob[k].mean_p),
                              std::abs(oa[k].mean_x2 - ob[k].mean_x2), std::abs(oa[k].mean_x3 - ob[k].mean_x3),
                              std::abs(oa[k].energy - ob[k].energy)});
        return worst;
    };
    const double s64 = shift(64, 96);
    c.check(s64 < 1e-8, "observable shift 64 -> 96 levels: %.3g < 1e-8", s64);
    c.check(ex.convergence_shift < 1e-8, "observable shift %zu -> %zu levels (default basis): %.3g < 1e-8",
            config.n_levels, ex.convergence_levels, ex.convergence_shift);

    // D2(t = 1) under refinement, against the criterion 5 run.
    Config half = single_time(config);
    half.dt = config.dt / 2;
    const auto r_half = run_distance(half, threads);
    Config fine = single_time(config);
    const auto g2 = config.grid().refined(2);
    fine.n_x = g2.n_x();
    fine.n_p = g2.n_p();
    const auto r_fine = run_distance(fine, threads);
    for (const char* m : {"twa", "vtwa"}) {
        const double d0 = d2_at(base, m, config.t_max);
        const double dh = d2_at(r_half, m, config.t_max);
        const double dg = d2_at(r_fine, m, config.t_max);
        c.check(std::abs(dh - d0) < 0.01 * d0, "%s: halving dt moves D2(1) from %.6g to %.6g (%.3g%% < 1%%)", m, d0,
                dh, 100 * std::abs(dh - d0) / d0);
        c.check(std::abs(dg - d0) < 0.005 * d0,
                "%s: %zux%zu grid moves D2(1) from %.6g to %.6g (%.3g%% < 0.5%%)", m, g2.n_x(), g2.n_p(), d0, dg,
                100 * std::abs(dg - d0) / d0);
    }

    // Bit reproducibility across thread counts on a reduced run.
    Config small = config;
    small.t_max = 0.3;
    small.output_every = 0.1;
    small.n_x = small.n_p = 96;
    small.ensemble_n = 20000;
    small.fit_points = 6;
    small.snapshot_times = {0.3};
    small.n_levels = 128;
    small.convergence_check = false;
    small.gate_scaling = false;
    bool same = true;
    const auto e1 = run_evolve(small, 1), e4 = run_evolve(small, 4);
    same = same && e1.series.columns() == e4.series.columns();
    for (std::size_t k = 0; k < e1.snapshots.size(); ++k)
        for (std::size_t j = 0; j < e1.snapshots[k].fields.size(); ++j)
            same = same && e1.snapshots[k].fields[j].second.values == e4.snapshots[k].fields[j].second.values;
    const auto d1 = run_distance(small, 1), d4 = run_distance(small, 4);
    same = same && d1.series.columns() == d4.series.columns();
    c.check(same, "evolve and distance outputs identical with 1 and 4 threads");
    return c;
}

}  // namespace

int main() {
    std::printf("acceptance run, version %s, %u thread(s)\n", version_string().c_str(), default_thread_count());
    std::fflush(stdout);
    int failed = 0;
    auto run = [&](int id, const char* title, const std::function<Criterion()>& f) {
        Criterion c{id, title};
        try {
            c = f();
        } catch (const std::exception& e) {
            c.passed = false;
            c.details.push_back(std::string("FAIL exception: ") + e.what());
        }
        report(c);
        if (!c.passed) ++failed;
    };
    DistanceResult base;
    run(1, "algebraic theorem suite", algebraic_suite);
    run(2, "structural identities", structural_identities);
    run(3, "limits", limits);
    run(4, "Ehrenfest consistency", ehrenfest);
    run(5, "distance scaling", [&] { return distance_scaling(base); });
    run(6, "numerical hygiene", [&] { return hygiene(base); });
    std::printf("%d criterion(s) failed\n", failed);
    return failed;
}
