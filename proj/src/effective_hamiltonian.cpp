#include "vtwa/effective_hamiltonian.hpp"

#include <algorithm>
#include <cmath>

namespace vtwa {

namespace {

// x^2 (p - p0)^2 expanded in monomials, times c.
void add_x2_shifted_p2(PolyGauss::Coeffs& c, double p0, double coef) {
    c[{2, 2}] += coef;
    c[{2, 1}] += -2.0 * p0 * coef;
    c[{2, 0}] += p0 * p0 * coef;
}

}  // namespace

PolyGauss build_Hc(const EffectiveParams& params) {
    const auto& s = params.state;
    const double g = params.model.g();
    const double sx2 = s.sigma_x() * s.sigma_x();
    const double sp2 = s.sigma_p() * s.sigma_p();

    // Expansion of the bracketed form, kept close to how it reads.
    PolyGauss::Coeffs c;
    const double pre = g / (48.0 * sp2);
    c[{2, 0}] += 18.0 * pre;
    c[{4, 0}] += -3.0 * pre / sx2;
    c[{3, 0}] += 4.0 * s.x0() * pre / sx2;
    add_x2_shifted_p2(c, s.p0(), -6.0 * pre / sp2);
    return PolyGauss(s, 0, std::move(c));
}

PolyGauss build_H_eff(const EffectiveParams& params) {
    const auto& s = params.state;
    const double g = params.model.g();
    const double sp2 = s.sigma_p() * s.sigma_p();
    const double uncert2 = s.uncertainty_product() * s.uncertainty_product();

    PolyGauss::Coeffs c;
    c[{0, 2}] += 0.5;
    c[{2, 0}] += 0.5 * (1.0 + 3.0 * g / (4.0 * sp2));
    c[{4, 0}] += 0.25 * g * (1.0 - 1.0 / uncert2);
    c[{3, 0}] += g / uncert2 * s.x0() / 3.0;
    add_x2_shifted_p2(c, s.p0(), -0.5 * g / (4.0 * sp2 * sp2));
    return PolyGauss(s, 0, std::move(c));
}

double hc_equation_residual(const EffectiveParams& params) {
    return hc_equation_residual(params, build_Hc(params));
}

double hc_equation_residual(const EffectiveParams& params, const PolyGauss& hc) {
    const PolyGauss f = PolyGauss::gaussian(params.state);
    const PolyGauss lhs = poisson(poisson(hc, f), f);
    const PolyGauss d3 = pg_dp(pg_dp(pg_dp(f)));
    const PolyGauss source =
        poisson(pg_mul(PolyGauss::monomial(params.state, 1, 0, params.model.g() / 4.0), d3), f);
    // lhs = -source
    return pg_relative_residual(lhs, -source);
}

double el_residual(const EffectiveParams& params) {
    return el_residual(params, build_H_eff(params));
}

double el_residual(const EffectiveParams& params, const PolyGauss& h_eff) {
    const PolyGauss f = PolyGauss::gaussian(params.state);
    const PolyGauss lhs = poisson(poisson(h_eff, f), f);
    const PolyGauss rhs = poisson(moyal_quartic(params.model, f), f);
    return pg_relative_residual(lhs, rhs);
}

PolyGauss jump_distribution(const EffectiveParams& params) {
    return jump_distribution(params, build_H_eff(params));
}

PolyGauss jump_distribution(const EffectiveParams& params, const PolyGauss& h_eff) {
    const PolyGauss f = PolyGauss::gaussian(params.state);
    return pg_sub(poisson(h_eff, f), moyal_quartic(params.model, f));
}

PhasePoint symplectic_velocity(const PolyGauss& hamiltonian, PhasePoint pt) {
    return {pg_eval(pg_dp(hamiltonian), pt), -pg_eval(pg_dx(hamiltonian), pt)};
}

PhasePoint twa_rhs(const QuarticModel& model, PhasePoint pt) {
    return {pt.p, model.force(pt.x)};
}

PhasePoint vtwa_rhs(const EffectiveParams& params, PhasePoint centroid, PhasePoint pt) {
    const double g = params.model.g();
    const double sx2 = params.state.sigma_x() * params.state.sigma_x();
    const double sp2 = params.state.sigma_p() * params.state.sigma_p();
    const double x = pt.x;
    const double dp = pt.p - centroid.p;
    const double x2 = x * x;
    const double vx = pt.p - 0.25 * g * x2 * dp / (sp2 * sp2);
    const double vp = -x + 0.25 * g *
                               (x * dp * dp / (sp2 * sp2) - 3.0 * x / sp2 +
                                x2 * (x - centroid.x) / (sx2 * sp2) - 4.0 * x2 * x);
    return {vx, vp};
}

PhasePoint centroid_rhs(const EffectiveParams& params, PhasePoint centroid) {
    const double g = params.model.g();
    const double sp2 = params.state.sigma_p() * params.state.sigma_p();
    const double x0 = centroid.x;
    return {centroid.p, -x0 * (1.0 + 0.75 * g / sp2) - g * x0 * x0 * x0};
}

}  // namespace vtwa
