/// @file exact_quantum.hpp
/// @brief Reference quantum dynamics of the quartic oscillator in a
/// truncated harmonic-oscillator basis, and the Wigner transform of the
/// resulting pure states onto a phase-space grid.
///
/// Basis conventions: x = (a + a^dag)/sqrt(2), p = -i (a - a^dag)/sqrt(2),
/// phi_n are the normalized Hermite functions with positive leading sign.

#ifndef VTWA_EXACT_QUANTUM_HPP
#define VTWA_EXACT_QUANTUM_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "vtwa/phase_space.hpp"

namespace vtwa {

using cplx = std::complex<double>;

class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NormDriftError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NormalizationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Tail window used by the truncation check: the last 8 levels.
inline constexpr std::size_t kTailLevels = 8;
inline constexpr double kTailTolerance = 1e-10;

struct BasisState {
    Eigen::VectorXcd coeffs;

    std::size_t n_levels() const { return static_cast<std::size_t>(coeffs.size()); }
    double norm_squared() const { return coeffs.squaredNorm(); }
    /// Population of the last kTailLevels levels.
    double tail_mass() const;
};

/// Position matrix in the first n levels: X[n, n+1] = sqrt((n+1)/2).
Eigen::MatrixXd position_matrix(std::size_t n_levels);
/// Momentum matrix, P[n, n+1] = -i sqrt((n+1)/2).
Eigen::MatrixXcd momentum_matrix(std::size_t n_levels);

/// H = diag(n + 1/2) + (g/4) x^4. The x^4 block is built from a position
/// matrix four levels larger, so every retained matrix element is exact.
Eigen::MatrixXd build_hamiltonian_matrix(const QuarticModel& model, std::size_t n_levels);

/// Coherent state |alpha>, alpha = (x0 + i p0)/sqrt(2). Throws
/// TruncationError when the last levels carry more than kTailTolerance.
BasisState coherent_coeffs(double x0, double p0, std::size_t n_levels);

/// Gershgorin bound on the spectral radius of H.
double spectral_bound(const Eigen::MatrixXd& h);

/// Largest step for which RK4 on i dc/dt = H c is safely inside its
/// stability region (|lambda dt| <= 2 for every eigenvalue).
double stable_time_step(const Eigen::MatrixXd& h);

struct PropagationReport {
    std::vector<BasisState> snapshots;
    /// max_t |norm(t) - norm(0)| / t over the snapshots.
    double norm_drift_rate = 0.0;
};

struct QuantumPropagationOptions {
    double max_norm_drift_rate = 1e-8;
};

/// Integrates i dc/dt = H c with fixed-step RK4 from t = 0 to each output
/// time. Each interval between outputs uses ceil(interval/dt) equal steps.
/// No renormalization is applied. Throws std::invalid_argument when dt is
/// outside the RK4 stability region and NormDriftError when the norm
/// drifts faster than allowed.
PropagationReport propagate(const BasisState& initial, const Eigen::MatrixXd& h,
                            const std::vector<double>& output_times, double dt,
                            const QuantumPropagationOptions& options = {});

/// psi(x) = sum_n c_n phi_n(x) via the stable Hermite-function recurrence.
std::vector<cplx> wavefunction(const BasisState& state, std::span<const double> xs);

struct WignerTransformOptions {
    std::size_t y_points = 512;
    double y_max = 6.0;
    unsigned threads = 1;
    /// |integral - 1| allowed before NormalizationError.
    double normalization_tolerance = 1e-4;
};

/// f(x,p) = (1/pi) int psi*(x+y) psi(x-y) exp(2 i p y) dy on every grid node.
WignerField wigner_from_basis(const BasisState& state, const PhaseGrid& grid,
                              const WignerTransformOptions& options = {});

struct Observables {
    double norm = 0.0;
    double mean_x = 0.0;
    double mean_p = 0.0;
    double mean_x2 = 0.0;
    double mean_x3 = 0.0;
    double energy = 0.0;
};

Observables observables(const BasisState& state, const Eigen::MatrixXd& h);

}  // namespace vtwa

#endif  // VTWA_EXACT_QUANTUM_HPP
