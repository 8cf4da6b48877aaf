#include "vtwa/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace vtwa {

double hs_distance(const WignerField& a, const WignerField& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("hs_distance: grid mismatch");
    WignerField diff(a.grid);
    for (std::size_t k = 0; k < diff.values.size(); ++k) {
        const double d = a.values[k] - b.values[k];
        diff.values[k] = d * d;
    }
    return std::sqrt(std::max(0.0, 2.0 * kPi * integrate_grid(diff)));
}

double purity(const WignerField& f) {
    WignerField sq(f.grid);
    for (std::size_t k = 0; k < sq.values.size(); ++k) sq.values[k] = f.values[k] * f.values[k];
    return 2.0 * kPi * integrate_grid(sq);
}

std::vector<double> position_marginal(const WignerField& f) {
    const auto& g = f.grid;
    std::vector<double> m(g.n_x(), 0.0);
    for (std::size_t i = 0; i < g.n_x(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < g.n_p(); ++j) {
            const double w = (j == 0 || j + 1 == g.n_p()) ? 0.5 : 1.0;
            acc += w * f.at(i, j);
        }
        m[i] = acc * g.dp();
    }
    return m;
}

double loglog_slope(const TimeSeries& series, const std::string& column, double t_lo,
                    double t_hi) {
    const auto& t = series.times();
    const auto& v = series.column(column);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        if (!(t[i] > 0.0) || !(v[i] > 0.0))
            throw std::domain_error("loglog_slope: non-positive value in window for '" + column + "'");
        const double lx = std::log(t[i]);
        const double ly = std::log(v[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 5) throw std::domain_error("loglog_slope: fewer than 5 points in window");
    const double nn = static_cast<double>(n);
    return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

TimeSeries compare_moments(const TimeSeries& exact, const TimeSeries& trial,
                           const std::vector<std::string>& tags) {
    if (exact.times() != trial.times())
        throw std::invalid_argument("compare_moments: time grids are not aligned");
    TimeSeries out(exact.times());
    const auto& mx = exact.column("mean_x");
    const auto& mp = exact.column("mean_p");
    for (const auto& tag : tags) {
        const auto& x0 = trial.column("x0_" + tag);
        const auto& p0 = trial.column("p0_" + tag);
        std::vector<double> ex(mx.size()), ep(mx.size());
        for (std::size_t i = 0; i < mx.size(); ++i) {
            ex[i] = std::abs(mx[i] - x0[i]);
            ep[i] = std::abs(mp[i] - p0[i]);
        }
        out.add_column("err_x_" + tag, std::move(ex));
        out.add_column("err_p_" + tag, std::move(ep));
    }
    return out;
}

}  // namespace vtwa
