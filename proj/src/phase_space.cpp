#include "vtwa/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

#include "vtwa/parallel.hpp"

namespace vtwa {

unsigned default_thread_count() {
    if (const char* env = std::getenv("VTWA_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

QuarticModel::QuarticModel(double g) : g_(g) {
    if (!std::isfinite(g) || g < 0.0)
        throw std::invalid_argument("QuarticModel: coupling g must be finite and >= 0, got " +
                                    std::to_string(g));
}

double QuarticModel::hamiltonian(double x, double p) const {
    const double x2 = x * x;
    return 0.5 * p * p + 0.5 * x2 + 0.25 * g_ * x2 * x2;
}

bool PhasePoint::finite() const { return std::isfinite(x) && std::isfinite(p); }

GaussianWignerState::GaussianWignerState(double x0, double p0, double sigma_x, double sigma_p)
    : x0_(x0), p0_(p0), sigma_x_(sigma_x), sigma_p_(sigma_p) {
    if (!std::isfinite(x0) || !std::isfinite(p0))
        throw std::invalid_argument("GaussianWignerState: centroid must be finite");
    if (!(sigma_x > 0.0) || !(sigma_p > 0.0) || !std::isfinite(sigma_x) || !std::isfinite(sigma_p))
        throw std::invalid_argument("GaussianWignerState: widths must be positive and finite");
    // A few ulps of slack so that sx = sp = 1/sqrt(2) is accepted.
    if (2.0 * sigma_x * sigma_p < 1.0 - 4.0 * std::numeric_limits<double>::epsilon())
        throw std::invalid_argument("GaussianWignerState: 2 sigma_x sigma_p = " +
                                    std::to_string(2.0 * sigma_x * sigma_p) + " < 1");
}

GaussianWignerState GaussianWignerState::coherent(double x0, double p0) {
    const double s = std::sqrt(0.5);
    return {x0, p0, s, s};
}

bool GaussianWignerState::is_minimal(double tol) const {
    return std::abs(uncertainty_product() - 1.0) <= tol;
}

GaussianWignerState GaussianWignerState::displaced_to(PhasePoint c) const {
    return {c.x, c.p, sigma_x_, sigma_p_};
}

double GaussianWignerState::quadratic_form(PhasePoint pt) const {
    const double u = (pt.x - x0_) / sigma_x_;
    const double v = (pt.p - p0_) / sigma_p_;
    return 0.5 * (u * u + v * v);
}

double gaussian_eval(const GaussianWignerState& state, PhasePoint pt) {
    return std::exp(-state.quadratic_form(pt)) /
           (2.0 * kPi * state.sigma_x() * state.sigma_p());
}

PhaseGrid::PhaseGrid(double x_min, double x_max, std::size_t n_x,
                     double p_min, double p_max, std::size_t n_p)
    : x_min_(x_min), x_max_(x_max), n_x_(n_x), p_min_(p_min), p_max_(p_max), n_p_(n_p) {
    if (!(x_min < x_max) || !(p_min < p_max))
        throw std::invalid_argument("PhaseGrid: empty or inverted range");
    if (n_x < 8 || n_p < 8)
        throw std::invalid_argument("PhaseGrid: need at least 8 nodes per axis");
}

PhaseGrid PhaseGrid::default_grid() { return {-6.0, 6.0, 256, -6.0, 6.0, 256}; }

PhaseGrid PhaseGrid::refined(std::size_t factor) const {
    if (factor == 0) throw std::invalid_argument("PhaseGrid::refined: factor must be >= 1");
    return {x_min_, x_max_, (n_x_ - 1) * factor + 1, p_min_, p_max_, (n_p_ - 1) * factor + 1};
}

WignerField::WignerField(PhaseGrid g) : grid(g), values(g.size(), 0.0) {}

WignerField::WignerField(PhaseGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
        throw std::invalid_argument("WignerField: value count does not match grid");
}

double WignerField::min_value() const { return *std::min_element(values.begin(), values.end()); }
double WignerField::max_value() const { return *std::max_element(values.begin(), values.end()); }

WignerField sample_on_grid(const GaussianWignerState& state, const PhaseGrid& grid) {
    WignerField field(grid);
    for (std::size_t k = 0; k < grid.size(); ++k) field.values[k] = gaussian_eval(state, grid.node(k));
    return field;
}

namespace {

std::vector<double> quadrature_weights(std::size_t n, double h, QuadratureRule rule) {
    std::vector<double> w(n, h);
    if (rule == QuadratureRule::Simpson && n % 2 == 1) {
        for (std::size_t i = 1; i + 1 < n; ++i) w[i] = (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
        w.front() = w.back() = h / 3.0;
    } else {
        w.front() = w.back() = 0.5 * h;
    }
    return w;
}

}  // namespace

double integrate_grid(const WignerField& field, QuadratureRule rule) {
    const PhaseGrid& g = field.grid;
    const auto wx = quadrature_weights(g.n_x(), g.dx(), rule);
    const auto wp = quadrature_weights(g.n_p(), g.dp(), rule);
    double total = 0.0;
    for (std::size_t i = 0; i < g.n_x(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < g.n_p(); ++j) row += wp[j] * field.values[g.index(i, j)];
        total += wx[i] * row;
    }
    return total;
}

double sup_norm_difference(const WignerField& a, const WignerField& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("sup_norm_difference: grid mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        m = std::max(m, std::abs(a.values[k] - b.values[k]));
    return m;
}

PhasePoint TrajectoryEnsemble::mean() const {
    PhasePoint m;
    for (const auto& pt : points) {
        m.x += pt.x;
        m.p += pt.p;
    }
    const double n = static_cast<double>(points.size());
    return {m.x / n, m.p / n};
}

PhasePoint TrajectoryEnsemble::variance() const {
    const PhasePoint m = mean();
    PhasePoint v;
    for (const auto& pt : points) {
        v.x += (pt.x - m.x) * (pt.x - m.x);
        v.p += (pt.p - m.p) * (pt.p - m.p);
    }
    const double n = static_cast<double>(points.size());
    return {v.x / n, v.p / n};
}

namespace {

// SplitMix64 finalizer; used as a counter-based generator keyed on (seed, index, draw).
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform on (0, 1], 53 random bits.
double unit_uniform(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t index) {
    return unit_uniform(mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

PhasePoint sample_point(const GaussianWignerState& state, std::uint64_t base_seed,
                        std::uint64_t index) {
    const std::uint64_t key = mix64(base_seed ^ mix64(index));
    const double u1 = unit_uniform(mix64(key));
    const double u2 = unit_uniform(mix64(key + 1));
    // Box-Muller: both normals from one uniform pair.
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * kPi * u2;
    return {state.x0() + state.sigma_x() * r * std::cos(phi),
            state.p0() + state.sigma_p() * r * std::sin(phi)};
}

TrajectoryEnsemble sample_ensemble(const GaussianWignerState& state, std::size_t n,
                                   std::uint64_t base_seed, unsigned threads) {
    if (n == 0) throw std::invalid_argument("sample_ensemble: n must be >= 1");
    TrajectoryEnsemble ens;
    ens.base_seed = base_seed;
    ens.points.resize(n);
    parallel_for(n, threads, [&](std::size_t i) {
        ens.points[i] = sample_point(state, base_seed, static_cast<std::uint64_t>(i));
    });
    return ens;
}

TimeSeries::TimeSeries(std::vector<double> times) : times_(std::move(times)) {
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1]))
            throw std::invalid_argument("TimeSeries: times must be strictly increasing");
}

void TimeSeries::add_column(std::string name, std::vector<double> values) {
    if (values.size() != times_.size())
        throw std::invalid_argument("TimeSeries: column '" + name + "' has wrong length");
    if (has_column(name)) throw std::invalid_argument("TimeSeries: duplicate column '" + name + "'");
    columns_.emplace_back(std::move(name), std::move(values));
}

bool TimeSeries::has_column(const std::string& name) const {
    return std::any_of(columns_.begin(), columns_.end(),
                       [&](const auto& c) { return c.first == name; });
}

const std::vector<double>& TimeSeries::column(const std::string& name) const {
    for (const auto& c : columns_)
        if (c.first == name) return c.second;
    throw std::out_of_range("TimeSeries: no column '" + name + "'");
}

}  // namespace vtwa
