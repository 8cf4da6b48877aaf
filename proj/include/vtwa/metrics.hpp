/// @file metrics.hpp
/// @brief Hilbert-Schmidt distance between Wigner fields, purity, moment
/// comparison and short-time power-law fits.

#ifndef VTWA_METRICS_HPP
#define VTWA_METRICS_HPP

#include <string>
#include <vector>

#include "vtwa/phase_space.hpp"

namespace vtwa {

/// D2 = sqrt(2 pi * int (f_a - f_b)^2 dx dp), hbar = 1. Grids must match.
double hs_distance(const WignerField& a, const WignerField& b);

/// 2 pi * int f^2 dx dp; 1 for pure states.
double purity(const WignerField& f);

/// int f dp on each x node (trapezoid in p).
std::vector<double> position_marginal(const WignerField& f);

/// Least-squares slope of log(value) against log(t) over t in [t_lo, t_hi].
/// Needs at least 5 points in the window, all with t > 0 and value > 0.
double loglog_slope(const TimeSeries& series, const std::string& column, double t_lo,
                    double t_hi);

/// Per-time absolute centroid errors against the exact moments. `exact`
/// carries mean_x and mean_p; for every tag the trial series carries
/// x0_<tag> and p0_<tag>. Result columns: err_x_<tag>, err_p_<tag>.
TimeSeries compare_moments(const TimeSeries& exact, const TimeSeries& trial,
                           const std::vector<std::string>& tags);

}  // namespace vtwa

#endif  // VTWA_METRICS_HPP
