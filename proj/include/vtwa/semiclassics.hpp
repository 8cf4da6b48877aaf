/// @file semiclassics.hpp
/// @brief Characteristic propagation of the Gaussian Wigner ansatz:
/// forward trajectory ensembles and noise-free backward maps onto a grid.

#ifndef VTWA_SEMICLASSICS_HPP
#define VTWA_SEMICLASSICS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vtwa/effective_hamiltonian.hpp"
#include "vtwa/phase_space.hpp"

namespace vtwa {

enum class Method { TWA, VTWA };

std::string to_string(Method m);
Method parse_method(const std::string& name);

class PropagationError : public std::runtime_error {
  public:
    PropagationError(const std::string& what, std::size_t trajectory, double time);
    std::size_t trajectory() const { return trajectory_; }
    double time() const { return time_; }

  private:
    std::size_t trajectory_;
    double time_;
};

/// Classical fourth-order Runge-Kutta step for dz/dt = rhs(t, z).
/// dt may be negative (backward integration).
template <class Rhs>
PhasePoint rk4_step(Rhs&& rhs, double t, PhasePoint z, double dt) {
    const double half = 0.5 * dt;
    const PhasePoint k1 = rhs(t, z);
    const PhasePoint k2 = rhs(t + half, PhasePoint{z.x + half * k1.x, z.p + half * k1.p});
    const PhasePoint k3 = rhs(t + half, PhasePoint{z.x + half * k2.x, z.p + half * k2.p});
    const PhasePoint k4 = rhs(t + dt, PhasePoint{z.x + dt * k3.x, z.p + dt * k3.p});
    return {z.x + dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            z.p + dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p)};
}

/// |x| or |p| beyond this marks a trajectory as blown up.
inline constexpr double kBlowUpThreshold = 1e3;

/// Centroid (x0, p0) on the uniform mesh t_k = k t_max / n, n = ceil(t_max / dt).
/// Columns "x0" and "p0".
TimeSeries integrate_centroid(const EffectiveParams& params, double t_max, double dt);

/// Read-only centroid path shared by all characteristics of one vTWA run.
/// Between mesh points the path is a cubic Hermite interpolant using the
/// exact centroid velocity at the nodes.
class CentroidTrack {
  public:
    CentroidTrack(EffectiveParams params, TimeSeries series);
    static CentroidTrack integrate(const EffectiveParams& params, double t_max, double dt);

    PhasePoint at(double t) const;
    double t_max() const { return series_.times().back(); }
    const TimeSeries& series() const { return series_; }
    const EffectiveParams& params() const { return params_; }

  private:
    EffectiveParams params_;
    TimeSeries series_;
    double step_;
};

/// Classical trajectory of the true H sampled at `times` (columns "x", "p").
TimeSeries classical_trajectory(const QuarticModel& model, PhasePoint start,
                                const std::vector<double>& times, double dt);

struct EnsembleRun {
    /// One ensemble per requested output time, holding the trajectories
    /// that have not blown up by that time.
    std::vector<TrajectoryEnsemble> snapshots;
    /// Indices of trajectories that blew up, and when.
    std::vector<std::size_t> blown_up;
    std::vector<double> blow_up_times;
};

struct PropagationOptions {
    unsigned threads = 1;
    /// Tolerated blown-up fraction before the run fails.
    double max_blow_up_fraction = 1e-3;
};

/// Advances every point independently along TWA or vTWA characteristics.
/// Output times are non-negative and increasing; the input ensemble is at t = 0.
/// Each interval between output times is split into ceil(interval/dt) equal
/// steps. For VTWA a track covering the last output time is required.
EnsembleRun propagate_ensemble(Method method, const EffectiveParams& params,
                               const TrajectoryEnsemble& ensemble,
                               const std::vector<double>& output_times, double dt,
                               const CentroidTrack* track = nullptr,
                               const PropagationOptions& options = {});

struct BackwardMapOptions {
    unsigned threads = 1;
    /// Pre-image orbits leaving |x|,|p| <= safety_box contribute 0.
    double safety_box = kBlowUpThreshold;
};

struct BackwardMapResult {
    WignerField field;
    std::size_t escaped = 0;
};

/// f(z, t) = f_0(Z^{-1}(z, t)): integrates every grid node from t back to 0
/// and evaluates the initial Gaussian there.
BackwardMapResult backward_map(Method method, const EffectiveParams& params,
                               const PhaseGrid& grid, double t, double dt,
                               const CentroidTrack* track = nullptr,
                               const BackwardMapOptions& options = {});

/// Maps points from t_from to t_to (either direction) along the chosen flow.
std::vector<PhasePoint> transport_points(Method method, const EffectiveParams& params,
                                         std::span<const PhasePoint> points, double t_from,
                                         double t_to, double dt,
                                         const CentroidTrack* track = nullptr);

}  // namespace vtwa

#endif  // VTWA_SEMICLASSICS_HPP
