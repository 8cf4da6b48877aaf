#include "vtwa/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vtwa/parallel.hpp"

namespace vtwa {

std::string to_string(Method m) { return m == Method::TWA ? "twa" : "vtwa"; }

Method parse_method(const std::string& name) {
    if (name == "twa" || name == "TWA") return Method::TWA;
    if (name == "vtwa" || name == "VTWA") return Method::VTWA;
    throw std::invalid_argument("unknown method '" + name + "' (expected twa or vtwa)");
}

PropagationError::PropagationError(const std::string& what, std::size_t trajectory, double time)
    : std::runtime_error(what + " (trajectory " + std::to_string(trajectory) + ", t = " +
                         std::to_string(time) + ")"),
      trajectory_(trajectory),
      time_(time) {}

namespace {

std::size_t step_count(double span, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if (span <= 0.0) return 0;
    // Guard against ceil(1.0000000000000002) = 2 for spans that are multiples of dt.
    return static_cast<std::size_t>(std::ceil(span / dt - 1e-9));
}

/// One RK4 step with the centroid pre-evaluated at its three stage times.
struct Step {
    double t;
    double h;
    PhasePoint c0;
    PhasePoint c_half;
    PhasePoint c1;

    // rk4_step evaluates the stage times with exactly these expressions.
    PhasePoint centroid_at(double tau) const {
        if (tau == t) return c0;
        if (tau == t + 0.5 * h) return c_half;
        return c1;
    }
};

class Flow {
  public:
    Flow(Method method, const EffectiveParams& params, const CentroidTrack* track)
        : method_(method), params_(params), track_(track) {
        if (method == Method::VTWA && track == nullptr)
            throw std::invalid_argument("vTWA propagation requires a centroid track");
    }

    Step make_step(double t, double h) const {
        Step s{t, h, {}, {}, {}};
        if (method_ == Method::VTWA) {
            s.c0 = track_->at(t);
            s.c_half = track_->at(t + 0.5 * h);
            s.c1 = track_->at(t + h);
        }
        return s;
    }

    PhasePoint advance(const Step& s, PhasePoint z) const {
        if (method_ == Method::TWA) {
            return rk4_step([&](double, PhasePoint q) { return twa_rhs(params_.model, q); }, s.t, z,
                            s.h);
        }
        return rk4_step(
            [&](double tau, PhasePoint q) { return vtwa_rhs(params_, s.centroid_at(tau), q); },
            s.t, z, s.h);
    }

  private:
    Method method_;
    const EffectiveParams& params_;
    const CentroidTrack* track_;
};

std::vector<Step> plan_steps(const Flow& flow, double t_from, double t_to, double dt) {
    const std::size_t n = step_count(std::abs(t_to - t_from), dt);
    std::vector<Step> steps;
    steps.reserve(n);
    const double h = n == 0 ? 0.0 : (t_to - t_from) / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = t_from + h * static_cast<double>(k);
        steps.push_back(flow.make_step(t, h));
    }
    return steps;
}

bool escaped(PhasePoint z, double box) {
    return !z.finite() || std::abs(z.x) > box || std::abs(z.p) > box;
}

}  // namespace

TimeSeries integrate_centroid(const EffectiveParams& params, double t_max, double dt) {
    if (!(t_max > 0.0)) throw std::invalid_argument("integrate_centroid: t_max must be positive");
    const std::size_t n = step_count(t_max, dt);
    const double h = t_max / static_cast<double>(n);
    std::vector<double> times(n + 1), xs(n + 1), ps(n + 1);
    PhasePoint c = params.state.centroid();
    auto rhs = [&](double, PhasePoint q) { return centroid_rhs(params, q); };
    for (std::size_t k = 0; k <= n; ++k) {
        times[k] = k == n ? t_max : h * static_cast<double>(k);
        xs[k] = c.x;
        ps[k] = c.p;
        if (!c.finite() || std::abs(c.x) > 1e6)
            throw PropagationError("centroid blow-up, reduce dt or check parameters", 0, times[k]);
        if (k < n) c = rk4_step(rhs, times[k], c, h);
    }
    TimeSeries series(std::move(times));
    series.add_column("x0", std::move(xs));
    series.add_column("p0", std::move(ps));
    return series;
}

CentroidTrack::CentroidTrack(EffectiveParams params, TimeSeries series)
    : params_(std::move(params)), series_(std::move(series)) {
    const auto& t = series_.times();
    if (t.size() < 2 || t.front() != 0.0)
        throw std::invalid_argument("CentroidTrack: series must start at t = 0 with >= 2 points");
    if (!series_.has_column("x0") || !series_.has_column("p0"))
        throw std::invalid_argument("CentroidTrack: series needs x0 and p0 columns");
    step_ = t.back() / static_cast<double>(t.size() - 1);
    for (std::size_t k = 1; k < t.size(); ++k)
        if (std::abs(t[k] - t[k - 1] - step_) > 1e-9 * step_)
            throw std::invalid_argument("CentroidTrack: series must be uniformly spaced");
}

CentroidTrack CentroidTrack::integrate(const EffectiveParams& params, double t_max, double dt) {
    return CentroidTrack(params, integrate_centroid(params, t_max, dt));
}

PhasePoint CentroidTrack::at(double t) const {
    const auto& times = series_.times();
    const double slack = 1e-9 * step_;
    if (t < -slack || t > times.back() + slack)
        throw std::out_of_range("CentroidTrack: t = " + std::to_string(t) + " outside [0, " +
                                std::to_string(times.back()) + "]");
    const std::size_t last = times.size() - 1;
    std::size_t k = static_cast<std::size_t>(std::max(0.0, std::floor(t / step_)));
    k = std::min(k, last - 1);
    const double h = times[k + 1] - times[k];
    const double s = std::clamp((t - times[k]) / h, 0.0, 1.0);
    const auto& xs = series_.column("x0");
    const auto& ps = series_.column("p0");
    const PhasePoint a{xs[k], ps[k]};
    const PhasePoint b{xs[k + 1], ps[k + 1]};
    if (s == 0.0) return a;
    if (s == 1.0) return b;
    const PhasePoint va = centroid_rhs(params_, a);
    const PhasePoint vb = centroid_rhs(params_, b);
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return {h00 * a.x + h10 * h * va.x + h01 * b.x + h11 * h * vb.x,
            h00 * a.p + h10 * h * va.p + h01 * b.p + h11 * h * vb.p};
}

TimeSeries classical_trajectory(const QuarticModel& model, PhasePoint start,
                                const std::vector<double>& times, double dt) {
    TimeSeries series(times);
    std::vector<double> xs, ps;
    xs.reserve(times.size());
    ps.reserve(times.size());
    auto rhs = [&](double, PhasePoint q) { return twa_rhs(model, q); };
    PhasePoint z = start;
    double t = 0.0;
    for (double target : times) {
        if (target < t) throw std::invalid_argument("classical_trajectory: negative time");
        const std::size_t n = step_count(target - t, dt);
        const double h = n == 0 ? 0.0 : (target - t) / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) z = rk4_step(rhs, t + h * static_cast<double>(k), z, h);
        t = target;
        xs.push_back(z.x);
        ps.push_back(z.p);
    }
    series.add_column("x", std::move(xs));
    series.add_column("p", std::move(ps));
    return series;
}

EnsembleRun propagate_ensemble(Method method, const EffectiveParams& params,
                               const TrajectoryEnsemble& ensemble,
                               const std::vector<double>& output_times, double dt,
                               const CentroidTrack* track, const PropagationOptions& options) {
    const Flow flow(method, params, track);
    // Steps for every interval, plus the index at which each output is taken.
    std::vector<Step> steps;
    std::vector<std::size_t> output_after;
    double t = 0.0;
    for (double target : output_times) {
        if (target < t) throw std::invalid_argument("propagate_ensemble: output times must increase");
        const auto part = plan_steps(flow, t, target, dt);
        steps.insert(steps.end(), part.begin(), part.end());
        output_after.push_back(steps.size());
        t = target;
    }

    const std::size_t n = ensemble.size();
    const std::size_t n_out = output_times.size();
    std::vector<PhasePoint> out(n * n_out);
    std::vector<double> blow_time(n, std::numeric_limits<double>::quiet_NaN());
    std::vector<std::size_t> blow_step(n, steps.size() + 1);

    parallel_for(n, options.threads, [&](std::size_t i) {
        PhasePoint z = ensemble.points[i];
        std::size_t next_out = 0;
        for (std::size_t s = 0; s <= steps.size(); ++s) {
            while (next_out < n_out && output_after[next_out] == s) out[i * n_out + next_out++] = z;
            if (s == steps.size()) break;
            z = flow.advance(steps[s], z);
            if (escaped(z, kBlowUpThreshold)) {
                blow_time[i] = steps[s].t + steps[s].h;
                blow_step[i] = s;
                break;
            }
        }
    });

    EnsembleRun run;
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isnan(blow_time[i])) {
            run.blown_up.push_back(i);
            run.blow_up_times.push_back(blow_time[i]);
        }
    if (static_cast<double>(run.blown_up.size()) > options.max_blow_up_fraction * static_cast<double>(n)) {
        const std::size_t first = run.blown_up.front();
        throw PropagationError(std::to_string(run.blown_up.size()) + " of " + std::to_string(n) +
                                   " " + to_string(method) + " trajectories blew up",
                               first, blow_time[first]);
    }
    run.snapshots.resize(n_out);
    for (std::size_t k = 0; k < n_out; ++k) {
        auto& snap = run.snapshots[k];
        snap.base_seed = ensemble.base_seed;
        snap.points.reserve(n);
        // A trajectory that blows up later still has a valid position here.
        for (std::size_t i = 0; i < n; ++i)
            if (output_after[k] <= blow_step[i])
                snap.points.push_back(out[i * n_out + k]);
    }
    return run;
}

BackwardMapResult backward_map(Method method, const EffectiveParams& params,
                               const PhaseGrid& grid, double t, double dt,
                               const CentroidTrack* track, const BackwardMapOptions& options) {
    if (t < 0.0) throw std::invalid_argument("backward_map: t must be >= 0");
    const Flow flow(method, params, track);
    const auto steps = plan_steps(flow, t, 0.0, dt);
    BackwardMapResult result{WignerField(grid), 0};
    std::vector<unsigned char> lost(grid.size(), 0);
    parallel_for(grid.size(), options.threads, [&](std::size_t k) {
        PhasePoint z = grid.node(k);
        for (const Step& s : steps) {
            z = flow.advance(s, z);
            if (escaped(z, options.safety_box)) {
                lost[k] = 1;
                return;
            }
        }
        result.field.values[k] = gaussian_eval(params.state, z);
    });
    for (unsigned char l : lost) result.escaped += l;
    return result;
}

std::vector<PhasePoint> transport_points(Method method, const EffectiveParams& params,
                                         std::span<const PhasePoint> points, double t_from,
                                         double t_to, double dt, const CentroidTrack* track) {
    const Flow flow(method, params, track);
    const auto steps = plan_steps(flow, t_from, t_to, dt);
    std::vector<PhasePoint> out(points.begin(), points.end());
    for (auto& z : out)
        for (const Step& s : steps) z = flow.advance(s, z);
    return out;
}

}  // namespace vtwa
