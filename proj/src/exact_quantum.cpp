#include "vtwa/exact_quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SparseCore>

#include "vtwa/parallel.hpp"

namespace vtwa {

double BasisState::tail_mass() const {
    const auto n = coeffs.size();
    const auto tail = std::min<Eigen::Index>(n, static_cast<Eigen::Index>(kTailLevels));
    return coeffs.tail(tail).squaredNorm();
}

Eigen::MatrixXd position_matrix(std::size_t n_levels) {
    const auto n = static_cast<Eigen::Index>(n_levels);
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        const double v = std::sqrt(0.5 * static_cast<double>(k + 1));
        x(k, k + 1) = v;
        x(k + 1, k) = v;
    }
    return x;
}

Eigen::MatrixXcd momentum_matrix(std::size_t n_levels) {
    const auto n = static_cast<Eigen::Index>(n_levels);
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        const double v = std::sqrt(0.5 * static_cast<double>(k + 1));
        p(k, k + 1) = cplx(0.0, -v);
        p(k + 1, k) = cplx(0.0, v);
    }
    return p;
}

namespace {

// Exact matrix elements of x^power within the first n levels.
Eigen::MatrixXd position_power(std::size_t n_levels, int power) {
    const Eigen::MatrixXd big = position_matrix(n_levels + static_cast<std::size_t>(power));
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(big.rows(), big.cols());
    for (int k = 0; k < power; ++k) acc = acc * big;
    const auto n = static_cast<Eigen::Index>(n_levels);
    return acc.topLeftCorner(n, n);
}

}  // namespace

Eigen::MatrixXd build_hamiltonian_matrix(const QuarticModel& model, std::size_t n_levels) {
    if (n_levels < 16)
        throw std::invalid_argument("build_hamiltonian_matrix: need at least 16 levels");
    const auto n = static_cast<Eigen::Index>(n_levels);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) h(k, k) = static_cast<double>(k) + 0.5;
    if (model.g() != 0.0) h += 0.25 * model.g() * position_power(n_levels, 4);
    // Symmetrize away round-off in the matrix product.
    return 0.5 * (h + h.transpose());
}

BasisState coherent_coeffs(double x0, double p0, std::size_t n_levels) {
    if (n_levels < kTailLevels + 1)
        throw std::invalid_argument("coherent_coeffs: too few levels");
    const cplx alpha = cplx(x0, p0) / std::sqrt(2.0);
    BasisState s;
    s.coeffs.resize(static_cast<Eigen::Index>(n_levels));
    cplx c = std::exp(-0.5 * std::norm(alpha));
    for (std::size_t n = 0; n < n_levels; ++n) {
        if (n > 0) c *= alpha / std::sqrt(static_cast<double>(n));
        s.coeffs(static_cast<Eigen::Index>(n)) = c;
    }
    if (s.tail_mass() > kTailTolerance)
        throw TruncationError("coherent_coeffs: tail mass " + std::to_string(s.tail_mass()) +
                              " exceeds tolerance; increase the number of levels");
    return s;
}

double spectral_bound(const Eigen::MatrixXd& h) {
    return h.cwiseAbs().rowwise().sum().maxCoeff();
}

double stable_time_step(const Eigen::MatrixXd& h) { return 2.0 / spectral_bound(h); }

PropagationReport propagate(const BasisState& initial, const Eigen::MatrixXd& h,
                            const std::vector<double>& output_times, double dt,
                            const QuantumPropagationOptions& options) {
    if (!(dt > 0.0)) throw std::invalid_argument("propagate: dt must be positive");
    if (dt > stable_time_step(h))
        throw std::invalid_argument("propagate: dt = " + std::to_string(dt) +
                                    " is outside the RK4 stability region; use dt <= " +
                                    std::to_string(stable_time_step(h)));
    // dc/dt = -i H c; H is banded (|m - n| <= 4), so a sparse generator keeps
    // large bases cheap.
    const Eigen::MatrixXcd dense_gen = cplx(0.0, -1.0) * h.cast<cplx>();
    const Eigen::SparseMatrix<cplx, Eigen::RowMajor> gen = dense_gen.sparseView();
    Eigen::VectorXcd c = initial.coeffs;
    const double norm0 = c.squaredNorm();
    Eigen::VectorXcd k1(c.size()), k2(c.size()), k3(c.size()), k4(c.size()), tmp(c.size());

    PropagationReport report;
    double t = 0.0;
    for (double target : output_times) {
        if (target < t) throw std::invalid_argument("propagate: output times must increase");
        const double span = target - t;
        const auto n = span > 0.0 ? static_cast<std::size_t>(std::ceil(span / dt - 1e-9)) : 0;
        const double step = n == 0 ? 0.0 : span / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) {
            k1.noalias() = gen * c;
            tmp = c + (0.5 * step) * k1;
            k2.noalias() = gen * tmp;
            tmp = c + (0.5 * step) * k2;
            k3.noalias() = gen * tmp;
            tmp = c + step * k3;
            k4.noalias() = gen * tmp;
            c += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        t = target;
        if (t > 0.0) {
            const double rate = std::abs(c.squaredNorm() - norm0) / t;
            report.norm_drift_rate = std::max(report.norm_drift_rate, rate);
            if (rate > options.max_norm_drift_rate)
                throw NormDriftError("propagate: norm drift " + std::to_string(rate) +
                                     " per unit time at t = " + std::to_string(t) +
                                     "; try dt <= " + std::to_string(0.5 * dt));
        }
        report.snapshots.push_back(BasisState{c});
    }
    return report;
}

std::vector<cplx> wavefunction(const BasisState& state, std::span<const double> xs) {
    const std::size_t n = state.n_levels();
    const double norm0 = std::pow(kPi, -0.25);
    std::vector<cplx> psi(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        double prev = 0.0;
        double cur = norm0 * std::exp(-0.5 * x * x);
        cplx acc = state.coeffs(0) * cur;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double kk = static_cast<double>(k);
            const double next = std::sqrt(2.0 / (kk + 1.0)) * x * cur - std::sqrt(kk / (kk + 1.0)) * prev;
            prev = cur;
            cur = next;
            acc += state.coeffs(static_cast<Eigen::Index>(k + 1)) * cur;
        }
        psi[i] = acc;
    }
    return psi;
}

WignerField wigner_from_basis(const BasisState& state, const PhaseGrid& grid,
                              const WignerTransformOptions& options) {
    if (options.y_points < 256)
        throw std::invalid_argument("wigner_from_basis: need at least 256 y points");
    const std::size_t ny = options.y_points;
    const double hy = 2.0 * options.y_max / static_cast<double>(ny - 1);
    std::vector<double> ys(ny), wy(ny, hy);
    for (std::size_t j = 0; j < ny; ++j) ys[j] = -options.y_max + hy * static_cast<double>(j);
    wy.front() = wy.back() = 0.5 * hy;

    // exp(2 i p y) table, one row per momentum node.
    const std::size_t np = grid.n_p();
    std::vector<cplx> phase(np * ny);
    for (std::size_t k = 0; k < np; ++k)
        for (std::size_t j = 0; j < ny; ++j) phase[k * ny + j] = std::polar(1.0, 2.0 * grid.p(k) * ys[j]);

    WignerField field(grid);
    parallel_for(grid.n_x(), options.threads, [&](std::size_t i) {
        const double x = grid.x(i);
        std::vector<double> args(2 * ny);
        for (std::size_t j = 0; j < ny; ++j) {
            args[j] = x + ys[j];
            args[ny + j] = x - ys[j];
        }
        const auto psi = wavefunction(state, args);
        std::vector<cplx> kernel(ny);
        for (std::size_t j = 0; j < ny; ++j) kernel[j] = wy[j] * std::conj(psi[j]) * psi[ny + j];
        for (std::size_t k = 0; k < np; ++k) {
            double acc = 0.0;
            const cplx* row = &phase[k * ny];
            for (std::size_t j = 0; j < ny; ++j)
                acc += kernel[j].real() * row[j].real() - kernel[j].imag() * row[j].imag();
            field.values[grid.index(i, k)] = acc / kPi;
        }
    });

    const double total = integrate_grid(field);
    if (std::abs(total - 1.0) > options.normalization_tolerance)
        throw NormalizationError("wigner_from_basis: integral " + std::to_string(total) +
                                 " != 1; widen the grid or increase y_points");
    return field;
}

Observables observables(const BasisState& state, const Eigen::MatrixXd& h) {
    const std::size_t n = state.n_levels();
    const Eigen::VectorXcd& c = state.coeffs;
    const Eigen::MatrixXcd x = position_matrix(n).cast<cplx>();
    const Eigen::MatrixXcd x2 = position_power(n, 2).cast<cplx>();
    const Eigen::MatrixXcd x3 = position_power(n, 3).cast<cplx>();
    const Eigen::MatrixXcd p = momentum_matrix(n);
    const Eigen::MatrixXcd hc = h.cast<cplx>();
    Observables o;
    o.norm = c.squaredNorm();
    o.mean_x = c.dot(x * c).real();
    o.mean_p = c.dot(p * c).real();
    o.mean_x2 = c.dot(x2 * c).real();
    o.mean_x3 = c.dot(x3 * c).real();
    o.energy = c.dot(hc * c).real();
    return o;
}

}  // namespace vtwa
