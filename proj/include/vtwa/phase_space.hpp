/// @file phase_space.hpp
/// @brief Core phase-space types: the quartic model, the Gaussian Wigner
/// ansatz, uniform phase-space grids, trajectory ensembles and time series.
///
/// Everything is expressed in oscillator units (hbar = m = omega = 1) and
/// restricted to one degree of freedom, i.e. a two-dimensional phase space.

#ifndef VTWA_PHASE_SPACE_HPP
#define VTWA_PHASE_SPACE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vtwa {

inline constexpr double kPi = 3.14159265358979323846;

/// Quartic oscillator H = p^2/2 + x^2/2 + g x^4/4.
class QuarticModel {
  public:
    explicit QuarticModel(double g = 0.0);

    double g() const { return g_; }
    double hamiltonian(double x, double p) const;
    double force(double x) const { return -x - g_ * x * x * x; }

  private:
    double g_;
};

struct PhasePoint {
    double x = 0.0;
    double p = 0.0;

    bool finite() const;
    friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// Displaced Gaussian Wigner function
///   f(x,p) = exp(-(x-x0)^2/(2 sx^2) - (p-p0)^2/(2 sp^2)) / (2 pi sx sp).
/// Construction enforces 2 sx sp >= 1.
class GaussianWignerState {
  public:
    GaussianWignerState(double x0, double p0, double sigma_x, double sigma_p);

    /// Minimal-uncertainty (coherent) state with sx = sp = 1/sqrt(2).
    static GaussianWignerState coherent(double x0, double p0);

    double x0() const { return x0_; }
    double p0() const { return p0_; }
    double sigma_x() const { return sigma_x_; }
    double sigma_p() const { return sigma_p_; }
    PhasePoint centroid() const { return {x0_, p0_}; }

    /// 2 sx sp; equals 1 for pure states.
    double uncertainty_product() const { return 2.0 * sigma_x_ * sigma_p_; }
    bool is_minimal(double tol = 1e-12) const;

    /// Same widths, new centroid.
    GaussianWignerState displaced_to(PhasePoint centroid) const;

    /// Quadratic form Q(x,p) in the exponent.
    double quadratic_form(PhasePoint pt) const;

    friend bool operator==(const GaussianWignerState&, const GaussianWignerState&) = default;

  private:
    double x0_;
    double p0_;
    double sigma_x_;
    double sigma_p_;
};

double gaussian_eval(const GaussianWignerState& state, PhasePoint pt);

/// Uniform rectangular grid, nodes include both end points.
class PhaseGrid {
  public:
    PhaseGrid(double x_min, double x_max, std::size_t n_x,
              double p_min, double p_max, std::size_t n_p);

    /// [-6,6]^2 with 256 nodes per axis.
    static PhaseGrid default_grid();

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double p_min() const { return p_min_; }
    double p_max() const { return p_max_; }
    std::size_t n_x() const { return n_x_; }
    std::size_t n_p() const { return n_p_; }
    std::size_t size() const { return n_x_ * n_p_; }
    double dx() const { return (x_max_ - x_min_) / static_cast<double>(n_x_ - 1); }
    double dp() const { return (p_max_ - p_min_) / static_cast<double>(n_p_ - 1); }
    double x(std::size_t i) const { return x_min_ + dx() * static_cast<double>(i); }
    double p(std::size_t j) const { return p_min_ + dp() * static_cast<double>(j); }

    /// Row-major flat index, x varies slowest.
    std::size_t index(std::size_t i, std::size_t j) const { return i * n_p_ + j; }
    PhasePoint node(std::size_t flat) const { return {x(flat / n_p_), p(flat % n_p_)}; }

    /// Same bounds, (n - 1) * factor + 1 nodes per axis so old nodes are kept.
    PhaseGrid refined(std::size_t factor) const;

    friend bool operator==(const PhaseGrid&, const PhaseGrid&) = default;

  private:
    double x_min_;
    double x_max_;
    std::size_t n_x_;
    double p_min_;
    double p_max_;
    std::size_t n_p_;
};

/// Wigner function sampled on a PhaseGrid. Values may be negative.
struct WignerField {
    PhaseGrid grid;
    std::vector<double> values;

    explicit WignerField(PhaseGrid g);
    WignerField(PhaseGrid g, std::vector<double> v);

    double at(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }
    double min_value() const;
    double max_value() const;
};

WignerField sample_on_grid(const GaussianWignerState& state, const PhaseGrid& grid);

enum class QuadratureRule { Trapezoid, Simpson };

/// Composite rule over the whole grid. Simpson needs an odd node count per
/// axis and falls back to the trapezoid rule otherwise.
double integrate_grid(const WignerField& field,
                      QuadratureRule rule = QuadratureRule::Trapezoid);

/// sup_{nodes} |a - b|; grids must match.
double sup_norm_difference(const WignerField& a, const WignerField& b);

struct TrajectoryEnsemble {
    std::vector<PhasePoint> points;
    std::uint64_t base_seed = 0;

    std::size_t size() const { return points.size(); }
    PhasePoint mean() const;
    PhasePoint variance() const;
};

/// Uniform deviate in (0, 1] that depends only on (seed, index).
double counter_uniform(std::uint64_t seed, std::uint64_t index);

/// Draws point i from (base_seed, i) alone, so the result does not depend on
/// evaluation order or thread count.
PhasePoint sample_point(const GaussianWignerState& state, std::uint64_t base_seed,
                        std::uint64_t index);

TrajectoryEnsemble sample_ensemble(const GaussianWignerState& state, std::size_t n,
                                   std::uint64_t base_seed, unsigned threads = 1);

/// Strictly increasing times plus named columns of equal length.
class TimeSeries {
  public:
    TimeSeries() = default;
    explicit TimeSeries(std::vector<double> times);

    const std::vector<double>& times() const { return times_; }
    std::size_t size() const { return times_.size(); }

    void add_column(std::string name, std::vector<double> values);
    bool has_column(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;
    const std::vector<std::pair<std::string, std::vector<double>>>& columns() const {
        return columns_;
    }

  private:
    std::vector<double> times_;
    std::vector<std::pair<std::string, std::vector<double>>> columns_;
};

}  // namespace vtwa

#endif  // VTWA_PHASE_SPACE_HPP
